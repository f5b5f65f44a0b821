#pragma once

// Machine verification of the two suborbit theorems, with pass/fail
// certificates that carry explicit margins.
//
// Vanishing suborbit:   ||R^{n!} 0||^2 < 4 pi^2 xi_1^2 / (n (n+2)), so
//                       ||R^{n!} 0|| decays like O(1/n).
// Blow-up suborbit:     for n >= 8,
//   3 (n-7) xi_{n+2}^2 <= 3 sum_{k=10}^{n+2} xi_k^2 <= ||R^{s_n} 0||^2
//     < 4 sum_{k=1}^{n+2} xi_k^2 + pi^2 xi_{n+3}^2 / ((n+3)^2 - 1)
//    <= 4 (n+2) xi_1^2 + pi^2 xi_{n+3}^2 / ((n+3)^2 - 1),
// driven by the exact-rational window
//   1/2 - 3/(2k) < {s_n / k!} < 1/2 + 13/(24k)   for 10 <= k <= n+2,
// which pins sin^2({s_n/k!} pi) above 3/4.
//
// A certificate passes only when the claimed relation holds with both
// operands' error bounds accounted: the certified intervals must not
// overlap (strict relations additionally require positive margin).

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>
#include <vector>

#include "certified.hpp"
#include "exact_trig.hpp"
#include "format_util.hpp"
#include "index_sequences.hpp"
#include "lifted_operator.hpp"
#include "xi_schedule.hpp"

namespace edelstein {

enum class Claim {
  VanishingSuborbit,
  BlowupChain,
  FractionalWindow,
  EdelsteinNormFinite,
  PropertySuite,
};

enum class Relation { LessEqual, LessThan, InInterval };

inline const char* to_string(Claim c) {
  switch (c) {
    case Claim::VanishingSuborbit: return "vanishing_suborbit";
    case Claim::BlowupChain: return "blowup_chain";
    case Claim::FractionalWindow: return "fractional_window";
    case Claim::EdelsteinNormFinite: return "edelstein_norm_finite";
    case Claim::PropertySuite: return "property_suite";
  }
  return "?";
}

inline const char* to_string(Relation r) {
  switch (r) {
    case Relation::LessEqual: return "<=";
    case Relation::LessThan: return "<";
    case Relation::InInterval: return "in";
  }
  return "?";
}

/// One verified inequality. For InInterval, rhs.value is the window center
/// and rhs.error_bound its halfwidth.
struct BoundCertificate {
  Claim claim{};
  int n = 0;
  int k = 0;  // secondary index where applicable (window certificates)
  CertifiedValue lhs;
  CertifiedValue rhs;
  Relation relation = Relation::LessThan;
  bool pass = false;
  double margin = 0.0;
  std::string note;
};

namespace detail {

inline CertifiedValue xi_sq_partial(const XiSchedule& xs, int lo, int hi) {
  CompensatedSum acc;
  for (int k = lo; k <= hi; ++k) {
    const double xi = xs.xi(k);
    acc.add(xi * xi);
  }
  const double v = acc.value();
  return {v, fp_sum_allowance(v)};
}

}  // namespace detail

/// Certifies ||R^{n!} 0||^2 < 4 pi^2 xi_1^2 / (n(n+2)) and the induced rate
/// check n * ||R^{n!} 0|| <= 2 pi xi_1 sqrt(n/(n+2)).
inline BoundCertificate verify_vanishing_suborbit(const XiSchedule& xs, int n, double rel_tol = 1e-9) {
  if (n < 1) throw std::invalid_argument("verify_vanishing_suborbit: n must be >= 1");
  const BigIndex N = factorial(static_cast<unsigned long>(n));
  const CertifiedValue value = orbit_norm_sq(xs, N, rel_tol);

  const double xi1 = xs.xi(1);
  constexpr double pi_sq = std::numbers::pi * std::numbers::pi;
  const double bound = 4.0 * pi_sq * xi1 * xi1 / (static_cast<double>(n) * (n + 2));
  const CertifiedValue rhs{bound, bound * 1e-15};

  const double margin = rhs.lower() - value.upper();
  bool pass = value.upper() < rhs.lower();

  const double rate_lhs = n * std::sqrt(value.upper());
  const double rate_rhs = 2.0 * std::numbers::pi * xi1 * std::sqrt(n / (n + 2.0));
  pass = pass && rate_lhs <= rate_rhs * (1.0 + 1e-12);

  BoundCertificate cert{Claim::VanishingSuborbit, n, 0, value, rhs, Relation::LessThan, pass, margin, {}};
  cert.note = stringf("||R^(%d!)0||^2 = %.12g (+/- %.3g) < %.12g; n*||.|| = %.6g <= %.6g",
                      n, value.value, value.error_bound, bound, rate_lhs, rate_rhs);
  return cert;
}

/// Certifies the full blow-up chain at index s_n (n >= 8). The two outer
/// links are exact consequences of the schedule's monotonicity and are
/// checked termwise; the two inner links use certified-interval logic.
inline BoundCertificate verify_blowup_suborbit(const XiSchedule& xs, int n, double rel_tol = 1e-9) {
  if (n < 8)
    throw std::invalid_argument(
        "verify_blowup_suborbit: the blow-up theorem hypothesis requires n >= 8");
  const BigIndex N = s_index(static_cast<unsigned>(n));
  const CertifiedValue value = orbit_norm_sq(xs, N, rel_tol);

  const double xi1 = xs.xi(1);
  const double xi_n2 = xs.xi(n + 2);
  const double xi_n3 = xs.xi(n + 3);
  constexpr double pi_sq = std::numbers::pi * std::numbers::pi;

  const double chain_a = 3.0 * (n - 7) * xi_n2 * xi_n2;
  CertifiedValue chain_b = detail::xi_sq_partial(xs, 10, n + 2);
  chain_b.value *= 3.0;
  chain_b.error_bound *= 3.0;
  const double pi_term = pi_sq * xi_n3 * xi_n3 / (static_cast<double>(n + 3) * (n + 3) - 1.0);
  CertifiedValue chain_c = detail::xi_sq_partial(xs, 1, n + 2);
  chain_c = {4.0 * chain_c.value + pi_term, 4.0 * chain_c.error_bound + pi_term * 1e-15};
  const double chain_d = 4.0 * (n + 2) * xi1 * xi1 + pi_term;

  bool a_le_b = true;  // 3(n-7) xi_{n+2}^2 <= 3 sum: termwise from decreasing xi
  bool c_le_d = true;  // 4 sum <= 4(n+2) xi_1^2: termwise from decreasing xi
  for (int k = 10; k <= n + 2; ++k) a_le_b = a_le_b && xs.xi(k) >= xi_n2;
  for (int k = 1; k <= n + 2; ++k) c_le_d = c_le_d && xs.xi(k) <= xi1;

  const bool b_le_v = chain_b.upper() <= value.lower();
  const bool v_lt_c = value.upper() < chain_c.lower();
  const double margin = std::min(value.lower() - chain_b.upper(), chain_c.lower() - value.upper());

  BoundCertificate cert;
  cert.claim = Claim::BlowupChain;
  cert.n = n;
  cert.lhs = value;
  cert.rhs = {(chain_b.value + chain_c.value) / 2.0, (chain_c.value - chain_b.value) / 2.0};
  cert.relation = Relation::InInterval;
  cert.pass = a_le_b && b_le_v && v_lt_c && c_le_d;
  cert.margin = margin;
  cert.note = stringf("%.6g <= %.6g <= ||R^(s_%d)0||^2 = %.12g (+/- %.3g) < %.6g <= %.6g",
                      chain_a, chain_b.value, n, value.value, value.error_bound, chain_c.value,
                      chain_d);
  return cert;
}

/// Exact-rational window certificates for {s_n / k!}, one per k in
/// [10, n+2]: the window (1/2 - 3/(2k), 1/2 + 13/(24k)) sits strictly
/// inside (1/3, 2/3) and forces sin^2({s_n/k!} pi) > 3/4. All window
/// comparisons are integer cross-multiplications; only the reported margin
/// is floating-point.
inline std::vector<BoundCertificate> verify_fractional_window(int n) {
  if (n < 8)
    throw std::invalid_argument(
        "verify_fractional_window: the blow-up theorem hypothesis requires n >= 8");
  const BigIndex sn = s_index(static_cast<unsigned>(n));
  std::vector<BoundCertificate> out;
  out.reserve(static_cast<std::size_t>(n - 7));
  for (int k = 10; k <= n + 2; ++k) {
    const FractionalPart frac = fractional_part(sn, static_cast<unsigned>(k));
    const mpz_class& num = frac.numerator.raw();
    const mpz_class& den = frac.denominator.raw();

    const bool above_lower = 2 * k * num > (k - 3) * den;       // > 1/2 - 3/(2k)
    const bool below_upper = 24 * k * num < (12 * k + 13) * den;  // < 1/2 + 13/(24k)
    const bool above_third = 3 * num > den;                     // > 1/3
    const bool below_two_thirds = 3 * num < 2 * den;            // < 2/3

    const double sin_val = sin_pi_of(num, den);
    const double sin_sq = sin_val * sin_val;
    const bool sin_ok = sin_sq > 0.75;

    const double value = static_cast<double>(frac.float_value);
    const double lo = 0.5 - 1.5 / k;
    const double hi = 0.5 + 13.0 / (24.0 * k);

    BoundCertificate cert;
    cert.claim = Claim::FractionalWindow;
    cert.n = n;
    cert.k = k;
    cert.lhs = {value, 0x1p-52};
    cert.rhs = {(lo + hi) / 2.0, (hi - lo) / 2.0};
    cert.relation = Relation::InInterval;
    cert.pass = above_lower && below_upper && above_third && below_two_thirds && sin_ok;
    cert.margin = std::min(value - lo, hi - value);
    cert.note = stringf("{s_%d/%d!} = %.12Lg in (%.6g, %.6g); sin^2 = %.6f > 3/4", n, k,
                        frac.float_value, lo, hi, sin_sq);
    out.push_back(std::move(cert));
  }
  return out;
}

/// Computes ||R^{e_n} 0||^2 and certifies it finite below the envelope
/// 4 sum_{k! <= e_n} xi_k^2 + tail. Growth across n is reported, never
/// asserted. Beyond n = 3 the series horizon tracks the crossover index
/// of e_n, which the note records.
inline BoundCertificate verify_blowup_edelstein(const XiSchedule& xs, int n, double rel_tol = 1e-9) {
  if (n < 1) throw std::invalid_argument("verify_blowup_edelstein: n must be >= 1");
  const BigIndex N = edelstein_index(static_cast<unsigned>(n));
  const CertifiedValue value = orbit_norm_sq(xs, N, rel_tol);

  const int cross = series_crossover(N);
  CertifiedValue envelope = detail::xi_sq_partial(xs, 1, cross - 1);
  const double tail = detail::orbit_tail_bound(xs, N, cross - 1);
  envelope = {4.0 * envelope.value + tail, 4.0 * envelope.error_bound + tail * 1e-15};

  BoundCertificate cert;
  cert.claim = Claim::EdelsteinNormFinite;
  cert.n = n;
  cert.lhs = value;
  cert.rhs = envelope;
  cert.relation = Relation::LessThan;
  cert.pass = value.upper() < envelope.lower();
  cert.margin = envelope.lower() - value.upper();
  cert.note = stringf("e_%d has %zu digits; series horizon near K = %d%s; ||R^(e_%d)0||^2 = %.12g",
                      n, N.digits10(), cross, n > 3 ? " (large index: slower)" : "", n, value.value);
  return cert;
}

/// One row of the decay/growth table: the vanishing suborbit against its
/// O(1/n) envelope and the blow-up suborbit against its sqrt(3(n-7))
/// floor (meaningful from n = 8).
struct RateRow {
  int n = 0;
  double factorial_norm = 0.0;  // ||R^{n!} 0||
  double factorial_bound = 0.0; // 2 pi xi_1 / sqrt(n(n+2))
  double blowup_norm = 0.0;     // ||R^{s_n} 0||
  double blowup_lower = 0.0;    // xi_{n+2} sqrt(3(n-7)), 0 for n < 8
  bool vanishing_ok = false;
  bool blowup_ok = false;
};

inline std::vector<RateRow> rate_table(const XiSchedule& xs, int n_max, double rel_tol = 1e-9) {
  if (n_max < 8) throw std::invalid_argument("rate_table: n_max must be >= 8");
  std::vector<RateRow> rows;
  rows.reserve(static_cast<std::size_t>(n_max));
  for (int n = 1; n <= n_max; ++n) {
    RateRow row;
    row.n = n;
    const BoundCertificate vanish = verify_vanishing_suborbit(xs, n, rel_tol);
    row.factorial_norm = std::sqrt(vanish.lhs.value);
    row.factorial_bound = 2.0 * std::numbers::pi * xs.xi(1) /
                          std::sqrt(static_cast<double>(n) * (n + 2));
    row.vanishing_ok = vanish.pass;
    if (n >= 8) {
      const BoundCertificate blow = verify_blowup_suborbit(xs, n, rel_tol);
      row.blowup_norm = std::sqrt(blow.lhs.value);
      row.blowup_lower = xs.xi(n + 2) * std::sqrt(3.0 * (n - 7));
      row.blowup_ok = blow.pass;
    } else {
      const CertifiedValue v = orbit_norm_sq(xs, s_index(static_cast<unsigned>(n)), rel_tol);
      row.blowup_norm = std::sqrt(v.value);
      row.blowup_lower = 0.0;
      row.blowup_ok = true;
    }
    rows.push_back(row);
  }
  return rows;
}

}  // namespace edelstein
