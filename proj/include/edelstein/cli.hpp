#pragma once

// Command implementations behind the `edelstein` CLI: orbit/suborbit norm
// tables, the verification report, and a single-plane splitting trajectory.
// Output is plot data (CSV or JSON), deterministic for a fixed config.

#include <iostream>
#include <ostream>
#include <stdexcept>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "format_util.hpp"
#include "index_sequences.hpp"
#include "lifted_operator.hpp"
#include "splitting.hpp"
#include "theorem_verifier.hpp"
#include "xi_schedule.hpp"

namespace edelstein {

enum class OutputFormat { Csv, Json };
enum class SuborbitFamily { Factorial, Edelstein, S };

inline SuborbitFamily parse_family(const std::string& text) {
  if (text == "factorial") return SuborbitFamily::Factorial;
  if (text == "edelstein") return SuborbitFamily::Edelstein;
  if (text == "s") return SuborbitFamily::S;
  throw std::invalid_argument("family must be one of: factorial, edelstein, s");
}

struct RunConfig {
  XiSchedule xi = XiSchedule::constant(1.0);
  long n_min = 0;
  long n_max = 0;
  double rel_tol = 1e-9;
  OutputFormat format = OutputFormat::Csv;
  SuborbitFamily family = SuborbitFamily::Factorial;
  bool with_norms = false;  // force norms for large edelstein indices
  int van_min = 1;          // vanishing-suborbit range of the verify command
  int van_max = 12;
  // dr command
  int dr_k = 3;
  double dr_theta = 0.0;  // 0 = use the factorial angle dr_k
  double dr_x1 = 0.0;
  double dr_x2 = 0.0;
  int dr_steps = 25;

  void validate() const {
    if (!(rel_tol > 0.0)) throw std::invalid_argument("rel-tol must be positive");
    if (n_min > n_max) throw std::invalid_argument("n-min must not exceed n-max");
    if (n_min < 0) throw std::invalid_argument("n-min must be nonnegative");
  }
};

namespace detail {

inline const char* verdict_str(bool pass) { return pass ? "pass" : "fail"; }

inline nlohmann::ordered_json certificate_json(const BoundCertificate& cert) {
  return nlohmann::ordered_json{
      {"claim", to_string(cert.claim)},
      {"n", cert.n},
      {"k", cert.k},
      {"lhs_value", cert.lhs.value},
      {"lhs_error", cert.lhs.error_bound},
      {"rhs_value", cert.rhs.value},
      {"rhs_error", cert.rhs.error_bound},
      {"relation", to_string(cert.relation)},
      {"margin", cert.margin},
      {"verdict", cert.pass ? "pass" : "fail"},
      {"note", cert.note},
  };
}

inline void certificate_csv_row(std::ostream& os, const BoundCertificate& cert) {
  os << to_string(cert.claim) << ',' << cert.n << ',' << cert.k << ','
     << format_double(cert.lhs.value) << ',' << format_double(cert.lhs.error_bound) << ','
     << format_double(cert.rhs.value) << ',' << format_double(cert.rhs.error_bound) << ','
     << to_string(cert.relation) << ',' << format_double(cert.margin) << ','
     << verdict_str(cert.pass) << '\n';
}

}  // namespace detail

/// Rows (n, ||R^n 0||^2, error_bound) for n in [n_min, n_max].
inline int cmd_orbit(const RunConfig& config, std::ostream& os) {
  config.validate();
  if (config.format == OutputFormat::Csv) {
    os << "n,norm_sq,error_bound\n";
    for (long n = config.n_min; n <= config.n_max; ++n) {
      const CertifiedValue v = orbit_norm_sq(config.xi, BigIndex(n), config.rel_tol);
      os << n << ',' << format_double(v.value) << ',' << format_double(v.error_bound) << '\n';
    }
    return 0;
  }
  nlohmann::ordered_json rows = nlohmann::ordered_json::array();
  for (long n = config.n_min; n <= config.n_max; ++n) {
    const CertifiedValue v = orbit_norm_sq(config.xi, BigIndex(n), config.rel_tol);
    rows.push_back(nlohmann::ordered_json{
        {"n", n}, {"norm_sq", v.value}, {"error_bound", v.error_bound}});
  }
  os << rows.dump(2) << '\n';
  return 0;
}

/// Rows (n, index, digits, norm_sq, error_bound, verdict) for one index
/// family. Edelstein indices beyond n = 3 skip the norm columns unless
/// with_norms is set; certificates apply where the theorems do.
inline int cmd_suborbit(const RunConfig& config, std::ostream& os) {
  config.validate();
  if (config.n_min < 1) throw std::invalid_argument("suborbit: n-min must be >= 1");

  struct Row {
    long n;
    std::string index;
    std::size_t digits;
    bool has_norm = false;
    CertifiedValue norm;
    std::string verdict;
  };
  std::vector<Row> rows;
  bool any_fail = false;

  for (long n = config.n_min; n <= config.n_max; ++n) {
    Row row;
    row.n = n;
    switch (config.family) {
      case SuborbitFamily::Factorial: {
        const BigIndex N = factorial(static_cast<unsigned long>(n));
        row.index = N.str();
        row.digits = N.digits10();
        const BoundCertificate cert = verify_vanishing_suborbit(config.xi, static_cast<int>(n), config.rel_tol);
        row.has_norm = true;
        row.norm = cert.lhs;
        row.verdict = detail::verdict_str(cert.pass);
        any_fail = any_fail || !cert.pass;
        break;
      }
      case SuborbitFamily::Edelstein: {
        const BigIndex N = edelstein_index(static_cast<unsigned>(n));
        row.index = N.str();
        row.digits = N.digits10();
        if (n <= 3 || config.with_norms) {
          const BoundCertificate cert = verify_blowup_edelstein(config.xi, static_cast<int>(n), config.rel_tol);
          row.has_norm = true;
          row.norm = cert.lhs;
          row.verdict = detail::verdict_str(cert.pass);
          any_fail = any_fail || !cert.pass;
        } else {
          row.verdict = "skipped";
        }
        break;
      }
      case SuborbitFamily::S: {
        const BigIndex N = s_index(static_cast<unsigned>(n));
        row.index = N.str();
        row.digits = N.digits10();
        if (n >= 8) {
          const BoundCertificate cert = verify_blowup_suborbit(config.xi, static_cast<int>(n), config.rel_tol);
          row.has_norm = true;
          row.norm = cert.lhs;
          row.verdict = detail::verdict_str(cert.pass);
          any_fail = any_fail || !cert.pass;
        } else {
          row.has_norm = true;
          row.norm = orbit_norm_sq(config.xi, N, config.rel_tol);
          row.verdict = "n/a";
        }
        break;
      }
    }
    rows.push_back(std::move(row));
  }

  if (config.format == OutputFormat::Csv) {
    os << "n,index,digits,norm_sq,error_bound,verdict\n";
    for (const Row& row : rows) {
      os << row.n << ',' << row.index << ',' << row.digits << ',';
      if (row.has_norm)
        os << format_double(row.norm.value) << ',' << format_double(row.norm.error_bound);
      else
        os << ',';
      os << ',' << row.verdict << '\n';
    }
  } else {
    nlohmann::ordered_json arr = nlohmann::ordered_json::array();
    for (const Row& row : rows) {
      nlohmann::ordered_json obj{{"n", row.n}, {"index", row.index}, {"digits", row.digits}};
      if (row.has_norm) {
        obj["norm_sq"] = row.norm.value;
        obj["error_bound"] = row.norm.error_bound;
      }
      obj["verdict"] = row.verdict;
      arr.push_back(std::move(obj));
    }
    os << arr.dump(2) << '\n';
  }
  return any_fail ? 1 : 0;
}

/// Runs the vanishing-suborbit certificates over [van_min, van_max], the
/// blow-up and window certificates over [n_min, n_max], and the splitting
/// property suites. Nonzero exit iff any certificate fails.
inline int cmd_verify(const RunConfig& config, std::ostream& os) {
  if (!(config.rel_tol > 0.0)) throw std::invalid_argument("rel-tol must be positive");
  if (config.van_min < 1 || config.van_min > config.van_max)
    throw std::invalid_argument("verify: vanishing range must satisfy 1 <= van-min <= van-max");
  if (config.n_min < 8)
    throw std::invalid_argument("verify: the blow-up theorem hypothesis requires n >= 8");
  if (config.n_min > config.n_max) throw std::invalid_argument("n-min must not exceed n-max");

  std::vector<BoundCertificate> certs;
  for (int n = config.van_min; n <= config.van_max; ++n)
    certs.push_back(verify_vanishing_suborbit(config.xi, n, config.rel_tol));
  for (int n = static_cast<int>(config.n_min); n <= static_cast<int>(config.n_max); ++n)
    certs.push_back(verify_blowup_suborbit(config.xi, n, config.rel_tol));
  for (int n = static_cast<int>(config.n_min); n <= static_cast<int>(config.n_max); ++n) {
    std::vector<BoundCertificate> window = verify_fractional_window(n);
    certs.insert(certs.end(), window.begin(), window.end());
  }
  {
    std::vector<BoundCertificate> props = splitting_property_suite();
    certs.insert(certs.end(), props.begin(), props.end());
  }

  bool any_fail = false;
  for (const BoundCertificate& cert : certs) any_fail = any_fail || !cert.pass;

  if (config.format == OutputFormat::Csv) {
    os << "claim,n,k,lhs_value,lhs_error,rhs_value,rhs_error,relation,margin,verdict\n";
    for (const BoundCertificate& cert : certs) detail::certificate_csv_row(os, cert);
  } else {
    nlohmann::ordered_json arr = nlohmann::ordered_json::array();
    for (const BoundCertificate& cert : certs) arr.push_back(detail::certificate_json(cert));
    os << arr.dump(2) << '\n';
  }
  return any_fail ? 1 : 0;
}

/// Single-plane splitting trajectory: T-iterates from the configured start
/// point next to the Douglas-Rachford iterates of the same point, their
/// deviation, and the distance to the fixed point. The trajectory is
/// reported, not asserted.
inline int cmd_dr(const RunConfig& config, std::ostream& os) {
  if (!(config.rel_tol > 0.0)) throw std::invalid_argument("rel-tol must be positive");
  if (config.dr_steps < 0) throw std::invalid_argument("dr: steps must be >= 0");

  const RotationParams params = config.dr_theta > 0.0
                                    ? RotationParams(config.dr_theta, config.xi.xi(1))
                                    : RotationParams::edelstein(config.dr_k, config.xi.xi(config.dr_k));
  const auto [line_u, line_v] = feasibility_lines(params);
  const PlanePoint f = fixed_point(params).point;

  PlanePoint t_point{config.dr_x1, config.dr_x2};
  PlanePoint dr_point = t_point;

  const auto emit_csv = [&](long step) {
    const double dev = norm(t_point - dr_point);
    os << step << ',' << format_double(t_point.x1) << ',' << format_double(t_point.x2) << ','
       << format_double(dr_point.x1) << ',' << format_double(dr_point.x2) << ','
       << format_double(dev) << ',' << format_double(norm(t_point - f)) << '\n';
  };

  if (config.format == OutputFormat::Csv) {
    os << "step,t_x1,t_x2,dr_x1,dr_x2,deviation,dist_to_fixed_point\n";
    emit_csv(0);
    for (int step = 1; step <= config.dr_steps; ++step) {
      t_point = apply_T(params, t_point);
      dr_point = apply_DR(line_u, line_v, dr_point);
      emit_csv(step);
    }
  } else {
    nlohmann::ordered_json arr = nlohmann::ordered_json::array();
    const auto emit_json = [&](long step) {
      arr.push_back(nlohmann::ordered_json{{"step", step},
                                           {"t", {t_point.x1, t_point.x2}},
                                           {"dr", {dr_point.x1, dr_point.x2}},
                                           {"deviation", norm(t_point - dr_point)},
                                           {"dist_to_fixed_point", norm(t_point - f)}});
    };
    emit_json(0);
    for (int step = 1; step <= config.dr_steps; ++step) {
      t_point = apply_T(params, t_point);
      dr_point = apply_DR(line_u, line_v, dr_point);
      emit_json(step);
    }
    os << arr.dump(2) << '\n';
  }
  return 0;
}

}  // namespace edelstein
