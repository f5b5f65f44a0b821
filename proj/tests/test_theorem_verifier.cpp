#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <numbers>

#include "edelstein/theorem_verifier.hpp"

using namespace edelstein;
using Catch::Approx;

namespace {
constexpr double kPi = std::numbers::pi;

void require_honest(const BoundCertificate& cert) {
  // a pass verdict must mean the certified intervals do not overlap
  if (!cert.pass) return;
  switch (cert.relation) {
    case Relation::LessThan:
      REQUIRE(cert.lhs.upper() < cert.rhs.lower());
      break;
    case Relation::LessEqual:
      REQUIRE(cert.lhs.upper() <= cert.rhs.lower());
      break;
    case Relation::InInterval:
      REQUIRE(cert.margin >= 0.0);
      break;
  }
}
}  // namespace

TEST_CASE("verify_vanishing_suborbit: constant schedule over n = 1..12") {
  const XiSchedule xs = XiSchedule::constant(1.0);
  for (int n = 1; n <= 12; ++n) {
    const BoundCertificate cert = verify_vanishing_suborbit(xs, n);
    INFO("n = " << n << ": " << cert.note);
    REQUIRE(cert.pass);
    REQUIRE(cert.margin > 0.0);
    require_honest(cert);
    REQUIRE(cert.rhs.value == Approx(4.0 * kPi * kPi / (n * (n + 2.0))).epsilon(1e-14));
  }

  // n = 5 bound is 4 pi^2 / 35 and the value sits near 1.02
  const BoundCertificate at5 = verify_vanishing_suborbit(xs, 5);
  REQUIRE(at5.lhs.value < 4.0 * kPi * kPi / 35.0);
  REQUIRE(at5.lhs.value == Approx(1.0226923863936834).epsilon(1e-9));

  // n = 12 exercises reduction at N = 479001600
  const BoundCertificate at12 = verify_vanishing_suborbit(xs, 12);
  REQUIRE(at12.lhs.value < 4.0 * kPi * kPi / 168.0);

  REQUIRE_THROWS_AS(verify_vanishing_suborbit(xs, 0), std::invalid_argument);
}

TEST_CASE("verify_blowup_suborbit: chain endpoints and hypothesis") {
  const XiSchedule xs = XiSchedule::constant(1.0);
  {
    const BoundCertificate cert = verify_blowup_suborbit(xs, 8);
    INFO(cert.note);
    REQUIRE(cert.pass);
    // 3(8-7) = 3 <= value < 4*10 + pi^2/80
    REQUIRE(cert.lhs.value >= 3.0);
    REQUIRE(cert.lhs.value < 40.0 + kPi * kPi / 80.0);
  }
  {
    const BoundCertificate cert = verify_blowup_suborbit(xs, 20);
    REQUIRE(cert.pass);
    REQUIRE(cert.lhs.value >= 39.0);
    REQUIRE(cert.lhs.value < 88.0 + kPi * kPi / 528.0);
  }
  {
    // divergent sum of xi_k^2 keeps the blow-up alive for 1/sqrt(k)
    const BoundCertificate cert = verify_blowup_suborbit(XiSchedule::inverse_sqrt(), 12);
    REQUIRE(cert.pass);
    REQUIRE(cert.lhs.value >= 3.0 * 5.0 / 14.0);
  }

  REQUIRE_THROWS_WITH(verify_blowup_suborbit(xs, 7),
                      Catch::Matchers::ContainsSubstring("n >= 8"));
}

TEST_CASE("verify_fractional_window: exact windows for sampled n") {
  for (int n : {8, 12, 40, 51, 60}) {
    const std::vector<BoundCertificate> certs = verify_fractional_window(n);
    REQUIRE(static_cast<int>(certs.size()) == n - 7);
    for (const BoundCertificate& cert : certs) {
      INFO("n = " << cert.n << ", k = " << cert.k << ": " << cert.note);
      REQUIRE(cert.pass);
      REQUIRE(cert.margin > 0.0);
      // window sits strictly inside (1/3, 2/3)
      REQUIRE(cert.rhs.value - cert.rhs.error_bound > 1.0 / 3.0);
      REQUIRE(cert.rhs.value + cert.rhs.error_bound < 2.0 / 3.0);
      // the sin^2 > 3/4 consequence is recorded with a positive margin
      REQUIRE_THAT(cert.note, Catch::Matchers::ContainsSubstring("> 3/4"));
    }
  }
  REQUIRE_THROWS_AS(verify_fractional_window(7), std::invalid_argument);
}

TEST_CASE("verify_blowup_edelstein: reported values stay in their envelope") {
  const XiSchedule xs = XiSchedule::constant(1.0);
  {
    // e_1 = 1: the value is exactly the translation norm
    const BoundCertificate cert = verify_blowup_edelstein(xs, 1);
    REQUIRE(cert.pass);
    const CertifiedValue v = translation_norm_sq(xs);
    REQUIRE(cert.lhs.value == Approx(v.value).margin(v.error_bound + cert.lhs.error_bound));
  }
  {
    const BoundCertificate cert = verify_blowup_edelstein(xs, 2);  // N = 20172
    REQUIRE(cert.pass);
    REQUIRE(std::isfinite(cert.lhs.value));
    require_honest(cert);
  }
  {
    const BoundCertificate cert = verify_blowup_edelstein(xs, 3);  // 24-digit reduction
    REQUIRE(cert.pass);
    REQUIRE_THAT(cert.note, Catch::Matchers::ContainsSubstring("24 digits"));
  }
  REQUIRE_THROWS_AS(verify_blowup_edelstein(xs, 0), std::invalid_argument);
}

TEST_CASE("growth across the range: blow-up dwarfs the vanishing suborbit") {
  const XiSchedule xs = XiSchedule::constant(1.0);
  double max_blowup = 0.0;
  for (int n = 8; n <= 40; ++n)
    max_blowup = std::max(max_blowup, verify_blowup_suborbit(xs, n).lhs.value);
  REQUIRE(max_blowup >= 99.0);  // 3 * 33 * xi_42^2

  for (int n = 1; n <= 12; ++n)
    REQUIRE(verify_vanishing_suborbit(xs, n).lhs.value < 4.0 * kPi * kPi / 3.0);
}

TEST_CASE("rate_table: rows agree with the individual certificates") {
  const XiSchedule xs = XiSchedule::constant(1.0);
  const std::vector<RateRow> rows = rate_table(xs, 12);
  REQUIRE(rows.size() == 12);
  for (const RateRow& row : rows) {
    REQUIRE(row.vanishing_ok);
    REQUIRE(row.blowup_ok);
    REQUIRE(row.factorial_norm <= row.factorial_bound);
    if (row.n >= 8) REQUIRE(row.blowup_norm >= row.blowup_lower);
    // O(1/n): n * ||R^{n!} 0|| <= 2 pi
    REQUIRE(row.n * row.factorial_norm <= 2.0 * kPi);
  }

  const RateRow& at8 = rows[7];
  const BoundCertificate vanish8 = verify_vanishing_suborbit(xs, 8);
  const BoundCertificate blow8 = verify_blowup_suborbit(xs, 8);
  REQUIRE(at8.factorial_norm == Approx(std::sqrt(vanish8.lhs.value)).epsilon(1e-14));
  REQUIRE(at8.blowup_norm == Approx(std::sqrt(blow8.lhs.value)).epsilon(1e-14));

  REQUIRE_THROWS_AS(rate_table(xs, 7), std::invalid_argument);
}

TEST_CASE("rate_table: O(sqrt(n)) envelope for the blow-up suborbit") {
  const XiSchedule xs = XiSchedule::constant(1.0);
  for (int n = 8; n <= 40; ++n) {
    const BoundCertificate cert = verify_blowup_suborbit(xs, n);
    REQUIRE(cert.lhs.value <= 4.0 * (n + 2) + kPi * kPi / ((n + 3.0) * (n + 3.0) - 1.0));
  }
}
