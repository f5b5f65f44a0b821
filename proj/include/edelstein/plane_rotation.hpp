#pragma once

// One planar affine rotation block: R x = L_theta x + v with translation
// v = xi * (1 - cos theta, -sin theta), so the unique fixed point (for
// theta < 2*pi) is f = (xi, 0). Closed-form iterates R^n x = f +
// L_{n theta}(x - f), the orbit-norm identity ||R^n 0||^2 =
// 4 xi^2 sin^2(n theta / 2), and the sandwich bounds
// -||x||^2 + 2 xi^2 sin^2(n theta/2) <= ||R^n x||^2
//                                    <= 3 ||x||^2 + 6 xi^2 sin^2(n theta/2).
//
// Angles from the factorial family theta_k = 2*pi/k! are stored as the
// integer k; iterate angles are then reduced exactly (n mod k!) before any
// trigonometric call.

#include <cmath>
#include <mutex>
#include <numbers>
#include <stdexcept>
#include <vector>

#include "exact_trig.hpp"
#include "index_sequences.hpp"

namespace edelstein {

struct PlanePoint {
  double x1 = 0.0;
  double x2 = 0.0;

  friend PlanePoint operator+(PlanePoint a, PlanePoint b) { return {a.x1 + b.x1, a.x2 + b.x2}; }
  friend PlanePoint operator-(PlanePoint a, PlanePoint b) { return {a.x1 - b.x1, a.x2 - b.x2}; }
  friend PlanePoint operator*(double s, PlanePoint p) { return {s * p.x1, s * p.x2}; }
  friend bool operator==(PlanePoint a, PlanePoint b) { return a.x1 == b.x1 && a.x2 == b.x2; }
};

inline double dot(PlanePoint a, PlanePoint b) { return a.x1 * b.x1 + a.x2 * b.x2; }
inline double norm_sq(PlanePoint p) { return p.x1 * p.x1 + p.x2 * p.x2; }
inline double norm(PlanePoint p) { return std::hypot(p.x1, p.x2); }
inline bool is_finite(PlanePoint p) { return std::isfinite(p.x1) && std::isfinite(p.x2); }

namespace detail {

inline void require_finite(PlanePoint p, const char* where) {
  if (!is_finite(p)) throw std::invalid_argument(std::string(where) + ": non-finite point");
}

struct TrigQuad {
  double cos_theta, sin_theta;  // of theta_k = 2*pi/k!
  double cos_half, sin_half;    // of theta_k / 2 = pi/k!
};

// Per-k trig of the factorial angles, computed once through the exact
// rational reduction. Synchronized; values never change once stored.
inline TrigQuad factorial_trig(int k) {
  static std::mutex mu;
  static std::vector<TrigQuad> cache;  // cache[k-1]
  std::scoped_lock lock(mu);
  while (static_cast<int>(cache.size()) < k) {
    const int kk = static_cast<int>(cache.size()) + 1;
    const mpz_class& q = factorial(static_cast<unsigned long>(kk)).raw();
    auto [c, s] = sincos_turn(1, q);
    cache.push_back(TrigQuad{c, s, cos_pi_of(1, q), sin_pi_of(1, q)});
  }
  return cache[static_cast<std::size_t>(k) - 1];
}

}  // namespace detail

/// Parameters of one block: the angle theta in (0, 2*pi] and the scale
/// xi > 0. Angles are either explicit or the factorial angle 2*pi/k!; the
/// translation v = xi*(1-cos theta, -sin theta) is always derived.
class RotationParams {
 public:
  RotationParams(double theta, double xi) : theta_(theta), xi_(xi) {
    constexpr double two_pi = 2.0 * std::numbers::pi;
    if (!std::isfinite(theta) || !(theta > 0.0) || !(theta <= two_pi))
      throw std::invalid_argument("RotationParams: theta must lie in (0, 2*pi]");
    if (!std::isfinite(xi) || !(xi > 0.0))
      throw std::invalid_argument("RotationParams: xi must be positive");
    if (theta == two_pi) {
      trig_ = {1.0, 0.0, -1.0, 0.0};
    } else if (theta == std::numbers::pi) {
      trig_ = {-1.0, 0.0, 0.0, 1.0};
    } else {
      trig_ = {std::cos(theta), std::sin(theta), std::cos(theta / 2.0), std::sin(theta / 2.0)};
    }
  }

  /// theta = 2*pi/k!; the index is kept so iterate angles reduce exactly.
  static RotationParams edelstein(int k, double xi) {
    if (k < 1) throw std::invalid_argument("RotationParams::edelstein: k must be >= 1");
    RotationParams p(detail::factorial_trig(k), k, xi);
    return p;
  }

  double theta() const {
    if (k_ == 0) return theta_;
    return std::numbers::pi * ratio_to_double(2, factorial(static_cast<unsigned long>(k_)).raw());
  }
  double xi() const { return xi_; }

  bool is_factorial() const { return k_ != 0; }
  int factorial_index() const {
    if (k_ == 0) throw std::logic_error("RotationParams: not a factorial angle");
    return k_;
  }

  bool is_full_turn() const { return k_ == 1 || (k_ == 0 && theta_ == 2.0 * std::numbers::pi); }
  bool is_half_turn() const { return k_ == 2 || (k_ == 0 && theta_ == std::numbers::pi); }

  double cos_theta() const { return trig_.cos_theta; }
  double sin_theta() const { return trig_.sin_theta; }
  double cos_half() const { return trig_.cos_half; }
  double sin_half() const { return trig_.sin_half; }

  /// v = xi * (1 - cos theta, -sin theta).
  PlanePoint translation() const { return {xi_ * (1.0 - trig_.cos_theta), -xi_ * trig_.sin_theta}; }

 private:
  RotationParams(detail::TrigQuad trig, int k, double xi) : theta_(0.0), xi_(xi), k_(k), trig_(trig) {
    if (!std::isfinite(xi) || !(xi > 0.0))
      throw std::invalid_argument("RotationParams: xi must be positive");
  }

  double theta_;
  double xi_;
  int k_ = 0;  // 0 = explicit angle
  detail::TrigQuad trig_{};
};

/// L_theta p, the plain linear rotation.
inline PlanePoint rotation_matrix_apply(double theta, PlanePoint p) {
  if (!std::isfinite(theta)) throw std::invalid_argument("rotation_matrix_apply: non-finite angle");
  detail::require_finite(p, "rotation_matrix_apply");
  const double c = std::cos(theta);
  const double s = std::sin(theta);
  return {p.x1 * c - p.x2 * s, p.x1 * s + p.x2 * c};
}

/// R p = L_theta p + v.
inline PlanePoint apply_R(const RotationParams& params, PlanePoint p) {
  detail::require_finite(p, "apply_R");
  const double c = params.cos_theta();
  const double s = params.sin_theta();
  const double xi = params.xi();
  return {p.x1 * c - p.x2 * s + xi * (1.0 - c), p.x1 * s + p.x2 * c - xi * s};
}

/// The fixed point f = (xi, 0). For theta = 2*pi every point is fixed; the
/// canonical point is still returned, flagged non-unique.
struct FixedPointInfo {
  PlanePoint point;
  bool unique = true;
};

inline FixedPointInfo fixed_point(const RotationParams& params) {
  return {{params.xi(), 0.0}, !params.is_full_turn()};
}

namespace detail {
inline PlanePoint rotate_about_fixed(double xi, double c, double s, PlanePoint p) {
  const double d1 = p.x1 - xi;
  return {xi + d1 * c - p.x2 * s, d1 * s + p.x2 * c};
}
}  // namespace detail

/// R^n p = f + L_{n theta}(p - f). Factorial angles reduce n mod k! in
/// integer arithmetic first; a zero reduced angle returns p bit-exactly.
inline PlanePoint iterate_R(const RotationParams& params, PlanePoint p, const BigIndex& n) {
  detail::require_finite(p, "iterate_R");
  if (n.is_zero() || params.is_full_turn()) return p;
  if (params.is_factorial()) {
    const mpz_class& q = factorial(static_cast<unsigned long>(params.factorial_index())).raw();
    mpz_class r = n.raw() % q;
    if (r == 0) return p;
    auto [c, s] = sincos_turn(r, q);
    return detail::rotate_about_fixed(params.xi(), c, s, p);
  }
  const double angle = reduce_angle_multiple(params.theta(), n);
  return detail::rotate_about_fixed(params.xi(), std::cos(angle), std::sin(angle), p);
}

namespace detail {
// sin^2(n * theta / 2) with the same exact reduction as iterate_R.
inline double iterate_half_sin_sq(const RotationParams& params, const BigIndex& n) {
  if (n.is_zero() || params.is_full_turn()) return 0.0;
  if (params.is_factorial()) {
    const mpz_class& q = factorial(static_cast<unsigned long>(params.factorial_index())).raw();
    const double s = sin_pi_of(n.raw() % q, q);  // n*theta/2 = pi * n / k!
    return s * s;
  }
  const double angle = reduce_angle_multiple(params.theta(), n);
  const double s = std::sin(angle / 2.0);
  return s * s;
}
}  // namespace detail

/// ||R^n 0||^2 = 4 xi^2 sin^2(n theta / 2).
inline double orbit_norm_sq_zero(const RotationParams& params, const BigIndex& n) {
  const double s2 = detail::iterate_half_sin_sq(params, n);
  return 4.0 * params.xi() * params.xi() * s2;
}

/// The sandwich around ||R^n p||^2.
struct NormSqBounds {
  double lower = 0.0;
  double upper = 0.0;
};

inline NormSqBounds iterate_norm_sq_bounds(const RotationParams& params, PlanePoint p, const BigIndex& n) {
  detail::require_finite(p, "iterate_norm_sq_bounds");
  const double s2 = detail::iterate_half_sin_sq(params, n);
  const double xi2 = params.xi() * params.xi();
  const double p2 = norm_sq(p);
  return {-p2 + 2.0 * xi2 * s2, 3.0 * p2 + 6.0 * xi2 * s2};
}

}  // namespace edelstein
