#pragma once

// Umbrella header.

#include "certified.hpp"
#include "cli.hpp"
#include "exact_trig.hpp"
#include "index_sequences.hpp"
#include "lifted_operator.hpp"
#include "plane_rotation.hpp"
#include "splitting.hpp"
#include "theorem_verifier.hpp"
#include "xi_schedule.hpp"
