#pragma once

// The lifted operator acting blockwise on a countable product of planes,
// with factorial angles theta_k = 2*pi/k! and scales xi_k. Elements are
// finitely supported; every series (orbit norms, translation norm) is a
// partial sum plus a certified tail bound, so results are honest at any
// iteration count.
//
// Orbit identity from zero:  ||R^n 0||^2 = 4 sum_{k>=1} xi_k^2 sin^2(n pi/k!).
// Tail domination: for k > K every term is at most 4 pi^2 xi_k^2 (n/k!)^2 and
// successive (n/k!)^2 shrink by at least (K+2)^2, so
//   tail <= 4 pi^2 xi_{K+1}^2 (n/(K+1)!)^2 * (K+2)^2 / ((K+2)^2 - 1).

#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>
#include <vector>

#include "certified.hpp"
#include "exact_trig.hpp"
#include "index_sequences.hpp"
#include "plane_rotation.hpp"
#include "xi_schedule.hpp"

namespace edelstein {

/// Finitely supported element: blocks 1..m, every later plane (0, 0).
struct Ell2Vector {
  std::vector<PlanePoint> blocks;

  int support() const { return static_cast<int>(blocks.size()); }

  PlanePoint block(int k) const {
    if (k < 1) throw std::invalid_argument("Ell2Vector: block index must be >= 1");
    return static_cast<std::size_t>(k) <= blocks.size() ? blocks[static_cast<std::size_t>(k) - 1]
                                                        : PlanePoint{};
  }

  double norm_sq() const {
    CompensatedSum acc;
    for (const PlanePoint& b : blocks) acc.add(edelstein::norm_sq(b));
    return acc.value();
  }
};

/// Block-k parameters of the lifted operator.
inline RotationParams block_params(const XiSchedule& xs, int k) {
  return RotationParams::edelstein(k, xs.xi(k));
}

/// One application, blockwise. Blocks are materialized up to
/// max(support, horizon); from a finitely supported input every block picks
/// up its translation, so the horizon controls how much of that is kept.
inline Ell2Vector apply_lifted(const XiSchedule& xs, const Ell2Vector& x, int horizon = 0) {
  const int m = std::max(x.support(), horizon);
  Ell2Vector out;
  out.blocks.reserve(static_cast<std::size_t>(m));
  for (int k = 1; k <= m; ++k) out.blocks.push_back(apply_R(block_params(xs, k), x.block(k)));
  return out;
}

/// Smallest K with K! > n.
inline int series_crossover(const BigIndex& n) {
  int k = 1;
  while (factorial(static_cast<unsigned long>(k)) <= n) ++k;
  return k;
}

namespace detail {

inline double orbit_term(const XiSchedule& xs, const BigIndex& n, int k) {
  const mpz_class& f = factorial(static_cast<unsigned long>(k)).raw();
  const double s = sin_pi_of(n.raw() % f, f);
  const double xi = xs.xi(k);
  return 4.0 * xi * xi * s * s;
}

// Bound on 4 sum_{k>K} xi_k^2 sin^2(n pi/k!); valid for every K >= 0 and
// only useful once (K+1)! outgrows n.
inline double orbit_tail_bound(const XiSchedule& xs, const BigIndex& n, int K) {
  const double ratio = ratio_to_double(n.raw(), factorial(static_cast<unsigned long>(K + 1)).raw());
  if (!(ratio < 1e150)) return std::numeric_limits<double>::infinity();
  const double g = static_cast<double>(K + 2) * (K + 2) / (static_cast<double>(K + 2) * (K + 2) - 1.0);
  const double xi = xs.xi(K + 1);
  constexpr double pi_sq = std::numbers::pi * std::numbers::pi;
  return 4.0 * pi_sq * xi * xi * ratio * ratio * g * (1.0 + 1e-13);
}

}  // namespace detail

/// ||R^n 0||^2, truncated at a fixed horizon K with the certified tail.
inline CertifiedValue orbit_norm_sq_truncated(const XiSchedule& xs, const BigIndex& n, int K) {
  if (K < 1) throw std::invalid_argument("orbit_norm_sq_truncated: K must be >= 1");
  if (n.is_zero()) return {0.0, 0.0};
  CompensatedSum acc;
  for (int k = 1; k <= K; ++k) acc.add(detail::orbit_term(xs, n, k));
  const double v = acc.value();
  return {v, detail::orbit_tail_bound(xs, n, K) + fp_sum_allowance(v)};
}

/// ||R^n 0||^2 with an adaptive horizon: start at the smallest K with
/// K! > 1000 n, then extend until the certified tail drops below
/// rel_tol * partial + 1e-300 (the absolute floor keeps the bound finite
/// and honest when the true value vanishes). The returned bound also
/// carries the double-rounding allowance, so requests below ~1e-13
/// relative saturate there.
inline CertifiedValue orbit_norm_sq(const XiSchedule& xs, const BigIndex& n, double rel_tol = 1e-9) {
  if (!std::isfinite(rel_tol) || !(rel_tol > 0.0))
    throw std::invalid_argument("orbit_norm_sq: rel_tol must be positive");
  if (n.is_zero()) return {0.0, 0.0};
  constexpr double abs_floor = 1e-300;

  const BigIndex target = n * 1000ul;
  int K = 1;
  while (factorial(static_cast<unsigned long>(K)) <= target) ++K;

  CompensatedSum acc;
  int done = 0;
  const auto extend = [&](int to) {
    for (int k = done + 1; k <= to; ++k) acc.add(detail::orbit_term(xs, n, k));
    done = to;
  };
  extend(K);
  double tail = detail::orbit_tail_bound(xs, n, done);
  while (tail > rel_tol * acc.value() + abs_floor && done < K + 400) {
    extend(done + 4);
    tail = detail::orbit_tail_bound(xs, n, done);
  }
  const double v = acc.value();
  return {v, tail + fp_sum_allowance(v)};
}

/// ||v||^2 = 4 sum_k xi_k^2 sin^2(pi/k!) — the same series as ||R^1 0||^2.
/// The certified result always respects the closed bound
/// 4 pi^2 xi_1^2 (e - 1).
inline CertifiedValue translation_norm_sq(const XiSchedule& xs, double rel_tol = 1e-9) {
  const CertifiedValue v = orbit_norm_sq(xs, BigIndex(1ul), rel_tol);
  const double xi1 = xs.xi(1);
  const double closed = 4.0 * std::numbers::pi * std::numbers::pi * xi1 * xi1 * (std::numbers::e - 1.0);
  if (!(v.upper() < closed))
    throw std::logic_error("translation_norm_sq: closed bound 4 pi^2 xi_1^2 (e-1) violated");
  return v;
}

/// Partial sum of ||f||^2 = sum_k xi_k^2 over k <= K. For square-summable
/// schedules the error bound covers the whole tail; otherwise `divergent`
/// is set and the bound covers only rounding in the partial sum.
struct AlgebraicFixedPointNorm {
  CertifiedValue norm_sq;
  bool divergent = false;
};

inline AlgebraicFixedPointNorm algebraic_fixed_point_norm_sq(const XiSchedule& xs, int K) {
  if (K < 1) throw std::invalid_argument("algebraic_fixed_point_norm_sq: K must be >= 1");
  CompensatedSum acc;
  for (int k = 1; k <= K; ++k) {
    const double xi = xs.xi(k);
    acc.add(xi * xi);
  }
  const double v = acc.value();
  if (xs.square_summable()) return {{v, xs.xi_sq_tail(K) + fp_sum_allowance(v)}, false};
  return {{v, fp_sum_allowance(v)}, true};
}

}  // namespace edelstein
