#pragma once

// The firmly nonexpansive counterpart T = (Id + R)/2 with closed-form
// iterates T^n x = f + cos^n(theta/2) L_{n theta/2}(x - f) and sharp linear
// rate cos(theta/2); the Douglas-Rachford operator
// D = Id - P_U + P_V(2 P_U - Id) for the line pair
//   U = R x {0},  V = f + R (cos(theta/2), sin(theta/2)),
// which coincides with T; and the monotone operator M = T^{-1} - Id:
//   M x = tan(theta/2) [[0,1],[-1,0]] (x - f)      (theta != pi)
//   M f = R^2 and M x = {} elsewhere               (theta  = pi).
// The inner product <Mp - Mq, p - q> vanishes identically (skew matrix).

#include <cmath>
#include <cstdint>
#include <numbers>
#include <random>
#include <stdexcept>
#include <utility>
#include <vector>

#include "certified.hpp"
#include "exact_trig.hpp"
#include "lifted_operator.hpp"
#include "plane_rotation.hpp"
#include "theorem_verifier.hpp"
#include "xi_schedule.hpp"

namespace edelstein {

/// Line base + R * direction; direction is normalized on construction.
struct AffineLine {
  PlanePoint base;
  PlanePoint direction;

  AffineLine(PlanePoint b, PlanePoint d) : base(b) {
    detail::require_finite(b, "AffineLine");
    detail::require_finite(d, "AffineLine");
    const double len = norm(d);
    if (!(len > 0.0)) throw std::invalid_argument("AffineLine: zero direction");
    direction = {d.x1 / len, d.x2 / len};
  }
};

/// Orthogonal projection onto the line.
inline PlanePoint project_line(const AffineLine& line, PlanePoint p) {
  detail::require_finite(p, "project_line");
  const double t = dot(p - line.base, line.direction);
  return line.base + t * line.direction;
}

/// T p = (p + R p) / 2.
inline PlanePoint apply_T(const RotationParams& params, PlanePoint p) {
  const PlanePoint rp = apply_R(params, p);
  return {(p.x1 + rp.x1) / 2.0, (p.x2 + rp.x2) / 2.0};
}

/// T^n p = f + cos^n(theta/2) L_{n theta/2}(p - f); for theta = 2*pi, T is
/// the identity.
inline PlanePoint iterate_T(const RotationParams& params, PlanePoint p, long n) {
  detail::require_finite(p, "iterate_T");
  if (n < 0) throw std::invalid_argument("iterate_T: n must be >= 0");
  if (n == 0 || params.is_full_turn()) return p;

  double rc, rs;  // cos/sin of n*theta/2
  if (params.is_factorial()) {
    const mpz_class& q = factorial(static_cast<unsigned long>(params.factorial_index())).raw();
    const mpz_class u = mpz_class(static_cast<unsigned long>(n)) % (2 * q);
    rc = cos_pi_of(u, q);
    rs = sin_pi_of(u, q);
  } else {
    const double angle = reduce_angle_multiple(params.theta() / 2.0, BigIndex(static_cast<unsigned long>(n)));
    rc = std::cos(angle);
    rs = std::sin(angle);
  }

  const double c = params.cos_half();
  double contraction = std::pow(std::abs(c), static_cast<double>(n));
  if (c < 0.0 && (n & 1L)) contraction = -contraction;

  const double xi = params.xi();
  const double d1 = p.x1 - xi;
  const double d2 = p.x2;
  return {xi + contraction * (d1 * rc - d2 * rs), contraction * (d1 * rs + d2 * rc)};
}

/// The feasibility pair {U, V} whose Douglas-Rachford operator equals T.
inline std::pair<AffineLine, AffineLine> feasibility_lines(const RotationParams& params) {
  AffineLine u{{0.0, 0.0}, {1.0, 0.0}};
  AffineLine v{{params.xi(), 0.0}, {params.cos_half(), params.sin_half()}};
  return {u, v};
}

/// D p = p - P_U p + P_V(2 P_U p - p).
inline PlanePoint apply_DR(const AffineLine& line_u, const AffineLine& line_v, PlanePoint p) {
  detail::require_finite(p, "apply_DR");
  const PlanePoint pu = project_line(line_u, p);
  const PlanePoint reflected = 2.0 * pu - p;
  const PlanePoint pv = project_line(line_v, reflected);
  return p - pu + pv;
}

/// Value of the set-valued monotone operator at one point.
class MonotoneValue {
 public:
  enum class Kind { Point, WholePlane, Empty };

  static MonotoneValue point(PlanePoint p) { return MonotoneValue(Kind::Point, p); }
  static MonotoneValue whole_plane() { return MonotoneValue(Kind::WholePlane, {}); }
  static MonotoneValue empty() { return MonotoneValue(Kind::Empty, {}); }

  Kind kind() const { return kind_; }
  PlanePoint point() const {
    if (kind_ != Kind::Point) throw std::logic_error("MonotoneValue: not single-valued");
    return point_;
  }

 private:
  MonotoneValue(Kind k, PlanePoint p) : kind_(k), point_(p) {}
  Kind kind_;
  PlanePoint point_;
};

namespace detail {
inline double tan_half(const RotationParams& params) {
  const double s = params.sin_half();
  if (s == 0.0) return 0.0;  // full turn: tan(pi) = 0 exactly
  return s / params.cos_half();
}
}  // namespace detail

/// M x per the three-way case split above; f = (xi, 0).
inline MonotoneValue apply_M(const RotationParams& params, PlanePoint p) {
  detail::require_finite(p, "apply_M");
  const double xi = params.xi();
  if (params.is_half_turn()) {
    const bool at_fixed = p.x1 == xi && p.x2 == 0.0;
    return at_fixed ? MonotoneValue::whole_plane() : MonotoneValue::empty();
  }
  const double t = detail::tan_half(params);
  return MonotoneValue::point({t * p.x2, t * (xi - p.x1)});
}

/// <Mp - Mq, p - q>; identically zero up to rounding. Unsupported at
/// theta = pi, where M is set-valued.
inline double verify_monotone_equality(const RotationParams& params, PlanePoint p, PlanePoint q) {
  if (params.is_half_turn())
    throw std::invalid_argument("verify_monotone_equality: M is set-valued at theta = pi");
  const PlanePoint mp = apply_M(params, p).point();
  const PlanePoint mq = apply_M(params, q).point();
  return dot(mp - mq, p - q);
}

/// Certified bound on sum_{k>=3} ||u_k||^2 for u in Mx:
/// 2 (||x||^2 + xi_1^2) sum_{k>=3} tan^2(pi/k!), with the tail dominated by
/// (4 pi^2 / 3) / (k!)^2.
inline CertifiedValue monotone_image_tail_bound(const XiSchedule& xs, const Ell2Vector& x) {
  constexpr int kPartial = 12;
  CompensatedSum acc;
  for (int k = 3; k <= kPartial; ++k) {
    const mpz_class& q = factorial(static_cast<unsigned long>(k)).raw();
    const double t = sin_pi_of(1, q) / cos_pi_of(1, q);
    acc.add(t * t);
  }
  constexpr double pi_sq = std::numbers::pi * std::numbers::pi;
  const double first = ratio_to_double(1, factorial(kPartial + 1).raw());
  const double geo = static_cast<double>(kPartial + 2) * (kPartial + 2) /
                     (static_cast<double>(kPartial + 2) * (kPartial + 2) - 1.0);
  const double tail = (4.0 * pi_sq / 3.0) * first * first * geo;

  const double xi1 = xs.xi(1);
  const double factor = 2.0 * (x.norm_sq() + xi1 * xi1);
  const double value = factor * acc.value();
  return {value, factor * (tail + fp_sum_allowance(acc.value())) + value * 1e-15};
}

/// Domain characterization of the product-space operator: Mx is nonempty
/// exactly when block 2 equals (xi_2, 0). The comparison is exact.
inline bool product_domain_check(const XiSchedule& xs, const Ell2Vector& x) {
  const PlanePoint b2 = x.block(2);
  return b2.x1 == xs.xi(2) && b2.x2 == 0.0;
}

/// Randomized property suites over the splitting operators, packaged as
/// certificates for the verification report. Deterministic for a fixed
/// seed.
inline std::vector<BoundCertificate> splitting_property_suite(std::uint64_t seed = 0x5eed5eedULL) {
  std::vector<BoundCertificate> out;
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> coord(-10.0, 10.0);
  const auto random_point = [&]() { return PlanePoint{coord(rng), coord(rng)}; };

  const auto add_cert = [&](const char* name, double worst, double tolerance, bool pass) {
    BoundCertificate cert;
    cert.claim = Claim::PropertySuite;
    cert.lhs = {worst, 0.0};
    cert.rhs = {tolerance, 0.0};
    cert.relation = Relation::LessEqual;
    cert.pass = pass;
    cert.margin = tolerance - worst;
    cert.note = name;
    out.push_back(std::move(cert));
  };

  std::vector<RotationParams> dr_params;
  for (int k = 2; k <= 6; ++k) dr_params.push_back(RotationParams::edelstein(k, 1.0));
  dr_params.emplace_back(std::numbers::pi / 2.0, 1.0);
  dr_params.emplace_back(3.0 * std::numbers::pi / 2.0, 1.0);

  {  // D = T, pointwise
    double worst = 0.0;
    bool pass = true;
    for (const RotationParams& params : dr_params) {
      const auto [u, v] = feasibility_lines(params);
      for (int i = 0; i < 1000; ++i) {
        const PlanePoint p = random_point();
        const double dev = norm(apply_DR(u, v, p) - apply_T(params, p));
        const double tol = 1e-12 * (1.0 + norm(p));
        worst = std::max(worst, dev);
        pass = pass && dev <= tol;
      }
    }
    add_cert("douglas_rachford_equals_T (deviation vs 1e-12*(1+||p||))", worst, 1e-12, pass);
  }

  {  // <Mp - Mq, p - q> = 0
    double worst = 0.0;
    bool pass = true;
    for (int k = 3; k <= 6; ++k) {
      const RotationParams params = RotationParams::edelstein(k, 1.0);
      const double t = detail::tan_half(params);
      for (int i = 0; i < 2500; ++i) {
        const PlanePoint p = random_point();
        const PlanePoint q = random_point();
        const double inner = std::abs(verify_monotone_equality(params, p, q));
        const double tol = 1e-12 * (1.0 + norm_sq(p - q)) * (1.0 + t * t);
        worst = std::max(worst, inner);
        pass = pass && inner <= tol;
      }
    }
    add_cert("monotone_inner_product_vanishes", worst, 1e-12, pass);
  }

  {  // firm nonexpansiveness + (2T - Id) = R
    double worst_firm = 0.0, worst_refl = 0.0;
    bool pass = true;
    for (int k = 1; k <= 6; ++k) {
      const RotationParams params = RotationParams::edelstein(k, 1.0);
      for (int i = 0; i < 1000; ++i) {
        const PlanePoint p = random_point();
        const PlanePoint q = random_point();
        const PlanePoint tp = apply_T(params, p);
        const PlanePoint tq = apply_T(params, q);
        const double firm = norm_sq(tp - tq) - dot(tp - tq, p - q);
        worst_firm = std::max(worst_firm, firm);
        pass = pass && firm <= 1e-12;
        const PlanePoint refl = 2.0 * tp - p;
        const double dev = norm(refl - apply_R(params, p));
        worst_refl = std::max(worst_refl, dev);
        pass = pass && dev <= 1e-12 * (1.0 + norm(p));
      }
    }
    add_cert("T_firmly_nonexpansive_and_2T_minus_Id_is_R", std::max(worst_firm, worst_refl), 1e-12,
             pass);
  }

  {  // resolvent identity: T(x + Mx) = x for theta not in {pi, 2pi}
    double worst = 0.0;
    bool pass = true;
    for (int k = 3; k <= 6; ++k) {
      const RotationParams params = RotationParams::edelstein(k, 1.0);
      for (int i = 0; i < 1000; ++i) {
        const PlanePoint p = random_point();
        const PlanePoint mp = apply_M(params, p).point();
        const double dev = norm(apply_T(params, p + mp) - p);
        worst = std::max(worst, dev);
        pass = pass && dev <= 1e-10 * (1.0 + norm(p));
      }
    }
    add_cert("resolvent_identity_T_of_Id_plus_M", worst, 1e-10, pass);
  }

  {  // half-angle identity: ||(Id + L_theta) p|| / 2 = |cos(theta/2)| ||p||
    double worst = 0.0;
    bool pass = true;
    for (const RotationParams& params : dr_params) {
      for (int i = 0; i < 1000; ++i) {
        const PlanePoint p = random_point();
        const PlanePoint lp = rotation_matrix_apply(params.theta(), p);
        const double lhs = norm(p + lp) / 2.0;
        const double rhs = std::abs(params.cos_half()) * norm(p);
        const double dev = std::abs(lhs - rhs);
        worst = std::max(worst, dev);
        pass = pass && dev <= 1e-12 * (1.0 + norm(p));
      }
    }
    add_cert("half_angle_identity_Id_plus_L", worst, 1e-12, pass);
  }

  return out;
}

}  // namespace edelstein
