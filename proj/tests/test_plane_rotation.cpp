#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <numbers>
#include <random>

#include "edelstein/plane_rotation.hpp"

using namespace edelstein;
using Catch::Approx;

namespace {
constexpr double kPi = std::numbers::pi;

PlanePoint brute_iterate(const RotationParams& params, PlanePoint p, long n) {
  for (long i = 0; i < n; ++i) p = apply_R(params, p);
  return p;
}
}  // namespace

TEST_CASE("rotation_matrix_apply: axis cases and norm preservation") {
  {
    const PlanePoint r = rotation_matrix_apply(0.0, {3.0, 4.0});
    REQUIRE(r.x1 == 3.0);
    REQUIRE(r.x2 == 4.0);
  }
  {
    const PlanePoint r = rotation_matrix_apply(kPi / 2.0, {1.0, 0.0});
    REQUIRE(r.x1 == Approx(0.0).margin(1e-15));
    REQUIRE(r.x2 == Approx(1.0).epsilon(1e-15));
  }
  {
    // 2*pi/3! = pi/3
    const PlanePoint r = rotation_matrix_apply(2.0 * kPi / 6.0, {1.0, 0.0});
    REQUIRE(r.x1 == Approx(0.5).epsilon(1e-14));
    REQUIRE(r.x2 == Approx(std::sqrt(3.0) / 2.0).epsilon(1e-14));
  }

  REQUIRE_THROWS_AS(rotation_matrix_apply(std::nan(""), PlanePoint{1, 2}), std::invalid_argument);
  REQUIRE_THROWS_AS(rotation_matrix_apply(1.0, PlanePoint{std::nan(""), 0}), std::invalid_argument);

  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> coord(-100.0, 100.0);
  std::uniform_real_distribution<double> angle(-10.0, 10.0);
  constexpr double four_ulp = 4.0 * std::numeric_limits<double>::epsilon();
  for (int i = 0; i < 2000; ++i) {
    const PlanePoint p{coord(rng), coord(rng)};
    const PlanePoint r = rotation_matrix_apply(angle(rng), p);
    REQUIRE(std::abs(norm(r) - norm(p)) <= four_ulp * norm(p));
  }
}

TEST_CASE("RotationParams validation") {
  REQUIRE_THROWS_AS(RotationParams(0.0, 1.0), std::invalid_argument);
  REQUIRE_THROWS_AS(RotationParams(2.0 * kPi + 0.1, 1.0), std::invalid_argument);
  REQUIRE_THROWS_AS(RotationParams(1.0, 0.0), std::invalid_argument);
  REQUIRE_THROWS_AS(RotationParams(1.0, -2.0), std::invalid_argument);
  REQUIRE_THROWS_AS(RotationParams::edelstein(0, 1.0), std::invalid_argument);

  REQUIRE(RotationParams::edelstein(1, 1.0).is_full_turn());
  REQUIRE(RotationParams::edelstein(2, 1.0).is_half_turn());
  REQUIRE(RotationParams(kPi, 1.0).is_half_turn());
  REQUIRE(RotationParams::edelstein(3, 1.0).theta() == Approx(kPi / 3.0).epsilon(1e-15));
}

TEST_CASE("apply_R: full turn, half turn, translation") {
  {
    const RotationParams params = RotationParams::edelstein(1, 1.5);  // theta = 2*pi, v = 0
    const PlanePoint p{0.3, -0.7};
    const PlanePoint r = apply_R(params, p);
    REQUIRE(r.x1 == p.x1);
    REQUIRE(r.x2 == p.x2);
  }
  {
    const RotationParams params(kPi, 1.0);  // v = (2, 0)
    const PlanePoint r = apply_R(params, {0.0, 0.0});
    REQUIRE(r.x1 == 2.0);
    REQUIRE(r.x2 == 0.0);
  }
  {
    // R p = f + L(p - f): cross-check against iterate_R at n = 1
    const RotationParams params(kPi / 3.0, 1.0);
    const PlanePoint p{1.0, 0.0};
    const PlanePoint direct = apply_R(params, p);
    const PlanePoint via_iterate = iterate_R(params, p, BigIndex(1ul));
    REQUIRE(direct.x1 == Approx(via_iterate.x1).margin(1e-14));
    REQUIRE(direct.x2 == Approx(via_iterate.x2).margin(1e-14));
  }
}

TEST_CASE("apply_R is an isometry") {
  std::mt19937_64 rng(17);
  std::uniform_real_distribution<double> coord(-50.0, 50.0);
  const RotationParams cases[] = {
      RotationParams::edelstein(2, 1.0), RotationParams::edelstein(3, 1.0),
      RotationParams::edelstein(5, 0.25), RotationParams(kPi / 7.0, 3.0),
      RotationParams(3.0 * kPi / 2.0, 1.0)};
  for (const RotationParams& params : cases) {
    for (int i = 0; i < 2000; ++i) {
      const PlanePoint p{coord(rng), coord(rng)};
      const PlanePoint q{coord(rng), coord(rng)};
      const double before = norm(p - q);
      const double after = norm(apply_R(params, p) - apply_R(params, q));
      REQUIRE(after == Approx(before).epsilon(1e-12));
    }
  }
}

TEST_CASE("fixed_point: canonical form and general-form oracle") {
  {
    const FixedPointInfo f = fixed_point(RotationParams(kPi / 3.0, 1.0));
    REQUIRE(f.point.x1 == 1.0);
    REQUIRE(f.point.x2 == 0.0);
    REQUIRE(f.unique);
  }
  {
    const FixedPointInfo f = fixed_point(RotationParams(kPi, 2.5));
    REQUIRE(f.point.x1 == 2.5);
    REQUIRE(f.point.x2 == 0.0);
  }
  {
    // General fixed-point formula f = ((v1 - v2 cot(t/2))/2, (v2 + v1 cot(t/2))/2)
    // applied to v = xi (1 - cos t, -sin t) at theta = pi/2, xi = 1: v = (1, -1).
    const double theta = kPi / 2.0;
    const double cot_half = 1.0 / std::tan(theta / 2.0);
    const double v1 = 1.0 - std::cos(theta);
    const double v2 = -std::sin(theta);
    const PlanePoint general{(v1 - v2 * cot_half) / 2.0, (v2 + v1 * cot_half) / 2.0};
    const FixedPointInfo f = fixed_point(RotationParams(theta, 1.0));
    REQUIRE(general.x1 == Approx(f.point.x1).margin(1e-15));
    REQUIRE(general.x2 == Approx(f.point.x2).margin(1e-15));
  }
  {
    // theta = 2*pi: every point is fixed; canonical point flagged non-unique
    const FixedPointInfo f = fixed_point(RotationParams::edelstein(1, 4.0));
    REQUIRE(f.point.x1 == 4.0);
    REQUIRE_FALSE(f.unique);
  }

  // residual ||R f - f|| <= 8 ulp * xi
  for (int k = 1; k <= 8; ++k) {
    const double xi = 0.5 + 0.75 * k;
    const RotationParams params = RotationParams::edelstein(k, xi);
    const PlanePoint f = fixed_point(params).point;
    REQUIRE(norm(apply_R(params, f) - f) <= 8.0 * std::numeric_limits<double>::epsilon() * xi);
  }
}

TEST_CASE("iterate_R: exact returns and closed form vs brute force") {
  const PlanePoint p{0.25, -1.5};
  {
    const RotationParams params = RotationParams::edelstein(4, 1.0);
    const PlanePoint r0 = iterate_R(params, p, BigIndex(0ul));
    REQUIRE(r0.x1 == p.x1);
    REQUIRE(r0.x2 == p.x2);

    // full-period return is bit-exact
    const PlanePoint rfull = iterate_R(params, p, factorial(4));
    REQUIRE(rfull.x1 == p.x1);
    REQUIRE(rfull.x2 == p.x2);
    const PlanePoint rmany = iterate_R(params, p, factorial(4) * 1000000ul);
    REQUIRE(rmany.x1 == p.x1);
    REQUIRE(rmany.x2 == p.x2);
  }
  {
    // R^3 0 = (2, 0) at theta = pi/3 = 2*pi/3!, xi = 1
    const RotationParams params = RotationParams::edelstein(3, 1.0);
    const PlanePoint closed = iterate_R(params, {0.0, 0.0}, BigIndex(3ul));
    REQUIRE(closed.x1 == Approx(2.0).epsilon(1e-14));
    REQUIRE(closed.x2 == Approx(0.0).margin(1e-14));
    const PlanePoint brute = brute_iterate(params, {0.0, 0.0}, 3);
    REQUIRE(closed.x1 == Approx(brute.x1).margin(1e-13));
    REQUIRE(closed.x2 == Approx(brute.x2).margin(1e-13));
  }
  {
    // closed form tracks n-fold application to 1e-9 absolute up to n = 1000
    const RotationParams cases[] = {RotationParams::edelstein(4, 1.0),
                                    RotationParams(2.0 * kPi / 7.0, 0.8)};
    for (const RotationParams& params : cases) {
      PlanePoint running{0.4, 1.1};
      for (long n = 1; n <= 1000; ++n) {
        running = apply_R(params, running);
        if (n % 97 == 0 || n == 1000) {
          const PlanePoint closed = iterate_R(params, {0.4, 1.1}, BigIndex(n));
          REQUIRE(closed.x1 == Approx(running.x1).margin(1e-9));
          REQUIRE(closed.x2 == Approx(running.x2).margin(1e-9));
        }
      }
    }
  }
}

TEST_CASE("iterate_R: semigroup property") {
  std::mt19937_64 rng(23);
  std::uniform_real_distribution<double> coord(-5.0, 5.0);
  std::uniform_int_distribution<long> count(0, 1000000);
  const RotationParams cases[] = {RotationParams::edelstein(3, 1.0),
                                  RotationParams::edelstein(6, 0.5),
                                  RotationParams(2.0 * kPi / 7.0, 1.0)};
  for (const RotationParams& params : cases) {
    for (int i = 0; i < 300; ++i) {
      const PlanePoint p{coord(rng), coord(rng)};
      const long n = count(rng);
      const long m = count(rng);
      const PlanePoint joint = iterate_R(params, p, BigIndex(n + m));
      const PlanePoint split = iterate_R(params, iterate_R(params, p, BigIndex(n)), BigIndex(m));
      REQUIRE(joint.x1 == Approx(split.x1).margin(1e-10));
      REQUIRE(joint.x2 == Approx(split.x2).margin(1e-10));
    }
  }
}

TEST_CASE("orbit_norm_sq_zero: identity values and agreement with iterates") {
  {
    const RotationParams params = RotationParams::edelstein(5, 1.0);
    REQUIRE(orbit_norm_sq_zero(params, BigIndex(0ul)) == 0.0);
    REQUIRE(orbit_norm_sq_zero(params, factorial(5)) == 0.0);  // integer multiple of 2*pi
  }
  {
    // theta = 2*pi/2! = pi, n = 1: 4 sin^2(pi/2) = 4
    const RotationParams params = RotationParams::edelstein(2, 1.0);
    REQUIRE(orbit_norm_sq_zero(params, BigIndex(1ul)) == 4.0);
  }
  {
    const RotationParams params = RotationParams::edelstein(4, 1.3);
    for (unsigned long n : {1ul, 2ul, 5ul, 17ul, 23ul}) {
      const double direct = norm_sq(iterate_R(params, {0.0, 0.0}, BigIndex(n)));
      const double closed = orbit_norm_sq_zero(params, BigIndex(n));
      if (closed > 0.0) REQUIRE(direct == Approx(closed).epsilon(1e-12));
    }
  }
}

TEST_CASE("iterate_norm_sq_bounds: sandwich contains the true norm") {
  {
    // p = 0: bounds (2 xi^2 s^2, 6 xi^2 s^2) straddle the exact 4 xi^2 s^2
    const RotationParams params = RotationParams::edelstein(3, 1.0);
    for (unsigned long n : {1ul, 2ul, 4ul, 9ul}) {
      const NormSqBounds b = iterate_norm_sq_bounds(params, {0.0, 0.0}, BigIndex(n));
      const double exact = orbit_norm_sq_zero(params, BigIndex(n));
      REQUIRE(b.lower <= exact + 1e-10);
      REQUIRE(exact <= b.upper + 1e-10);
      REQUIRE(b.lower == Approx(exact / 2.0).margin(1e-12));
      REQUIRE(b.upper == Approx(1.5 * exact).margin(1e-12));
    }
  }
  {
    // n = 0: (-||p||^2, 3 ||p||^2) contains ||p||^2
    const RotationParams params = RotationParams::edelstein(3, 1.0);
    const PlanePoint p{2.0, -1.0};
    const NormSqBounds b = iterate_norm_sq_bounds(params, p, BigIndex(0ul));
    REQUIRE(b.lower == -norm_sq(p));
    REQUIRE(b.upper == 3.0 * norm_sq(p));
  }
  {
    // five applications stay inside the sandwich
    const RotationParams params = RotationParams::edelstein(3, 1.0);
    std::mt19937_64 rng(29);
    std::uniform_real_distribution<double> coord(-3.0, 3.0);
    for (int i = 0; i < 100; ++i) {
      const PlanePoint p{coord(rng), coord(rng)};
      const double value = norm_sq(brute_iterate(params, p, 5));
      const NormSqBounds b = iterate_norm_sq_bounds(params, p, BigIndex(5ul));
      REQUIRE(b.lower <= value + 1e-10);
      REQUIRE(value <= b.upper + 1e-10);
    }
  }

  // randomized sandwich across parameters and exponents
  std::mt19937_64 rng(31);
  std::uniform_real_distribution<double> coord(-10.0, 10.0);
  std::uniform_int_distribution<int> pick_k(1, 7);
  std::uniform_int_distribution<long> pick_n(0, 5040);
  for (int i = 0; i < 10000; ++i) {
    const RotationParams params = RotationParams::edelstein(pick_k(rng), 1.0);
    const PlanePoint p{coord(rng), coord(rng)};
    const BigIndex n(pick_n(rng));
    const double value = norm_sq(iterate_R(params, p, n));
    const NormSqBounds b = iterate_norm_sq_bounds(params, p, n);
    REQUIRE(b.lower <= value + 1e-10);
    REQUIRE(value <= b.upper + 1e-10);
  }
}
