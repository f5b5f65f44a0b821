#pragma once

// Trigonometry of exact rational multiples of pi. All symmetry reduction
// happens in integer arithmetic, so the one libm call at the end only ever
// sees an argument in [0, pi/2] and results stay within a few ulp at any
// index magnitude. This is what keeps iterate counts with hundreds of
// digits meaningful: sin^2(n pi / k!) is periodic in n with period k!, and
// n mod k! is computed exactly before anything floating-point happens.

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <utility>

#include <gmpxx.h>
#include <mpfr.h>

#include "index_sequences.hpp"

namespace edelstein {

/// num/den as a double, accurate to ~1 ulp at any magnitude. The numerator
/// is shifted so the floor quotient carries ~96 significant bits before the
/// final rounding. Values below the subnormal range underflow to 0.
inline double ratio_to_double(const mpz_class& num, const mpz_class& den) {
  if (den == 0) throw std::invalid_argument("ratio_to_double: zero denominator");
  if (num == 0) return 0.0;
  const long nbits = static_cast<long>(mpz_sizeinbase(num.get_mpz_t(), 2));
  const long dbits = static_cast<long>(mpz_sizeinbase(den.get_mpz_t(), 2));
  long shift = dbits - nbits + 96;
  if (shift < 0) shift = 0;
  mpz_class q = (num << shift) / den;
  return std::ldexp(q.get_d(), static_cast<int>(-shift));
}

/// sin(pi * num/den) for any num >= 0. Reduction: num mod 2den (period),
/// sin(pi + x) = -sin(x), sin(pi - x) = sin(x); the remaining argument is
/// pi * x with x in [0, 1/2].
inline double sin_pi_of(mpz_class num, const mpz_class& den) {
  if (den <= 0) throw std::invalid_argument("sin_pi_of: denominator must be positive");
  if (num < 0) throw std::invalid_argument("sin_pi_of: numerator must be nonnegative");
  num %= 2 * den;
  double sign = 1.0;
  if (num >= den) {
    sign = -1.0;
    num -= den;
  }
  if (num == 0) return 0.0;
  if (2 * num > den) num = den - num;
  const double x = ratio_to_double(num, den);
  return sign * std::sin(std::numbers::pi * x);
}

/// cos(pi * num/den) = sin(pi * (2 num + den) / (2 den)).
inline double cos_pi_of(const mpz_class& num, const mpz_class& den) {
  return sin_pi_of(2 * num + den, 2 * den);
}

/// (cos, sin) of the angle 2*pi*(num/den).
inline std::pair<double, double> sincos_turn(const mpz_class& num, const mpz_class& den) {
  return {cos_pi_of(2 * num, den), sin_pi_of(2 * num, den)};
}

/// (theta * n) mod 2*pi in [0, 2*pi), computed at a working precision that
/// covers every bit of n plus 96 guard bits. theta participates as the exact
/// dyadic rational the double represents.
inline double reduce_angle_multiple(double theta, const BigIndex& n) {
  if (!std::isfinite(theta)) throw std::invalid_argument("reduce_angle_multiple: non-finite angle");
  if (n.is_zero() || theta == 0.0) return 0.0;
  const mpfr_prec_t prec = static_cast<mpfr_prec_t>(n.bit_length()) + 96;
  mpfr_t acc, tau;
  mpfr_init2(acc, prec);
  mpfr_init2(tau, prec);
  mpfr_set_d(acc, theta, MPFR_RNDN);  // exact
  mpfr_mul_z(acc, acc, n.raw().get_mpz_t(), MPFR_RNDN);
  mpfr_const_pi(tau, MPFR_RNDN);
  mpfr_mul_ui(tau, tau, 2, MPFR_RNDN);
  mpfr_fmod(acc, acc, tau, MPFR_RNDN);
  double reduced = mpfr_get_d(acc, MPFR_RNDN);
  mpfr_clear(acc);
  mpfr_clear(tau);
  const double two_pi = 2.0 * std::numbers::pi;
  if (reduced < 0.0) reduced += two_pi;
  if (reduced >= two_pi) reduced = 0.0;
  return reduced;
}

}  // namespace edelstein
