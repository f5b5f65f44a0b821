// edelstein — certified orbit norms, suborbit theorem verification, and
// splitting trajectories for the factorial-angle affine isometry.
//
// Exit codes: 0 success / all certificates pass, 1 verification failure,
// 2 usage or config error, 3 I/O error.

#include <exception>
#include <fstream>
#include <functional>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "edelstein/cli.hpp"

namespace {

struct CommonFlags {
  std::string xi = "constant:1.0";
  double rel_tol = 1e-9;
  std::string format = "csv";
  std::string out_path;
};

void add_common(CLI::App* cmd, CommonFlags& flags) {
  cmd->add_option("--xi", flags.xi,
                  "xi schedule: constant:C | invsqrt | list:a,b,...;tail:t")
      ->capture_default_str();
  cmd->add_option("--rel-tol", flags.rel_tol, "relative tolerance for certified series")
      ->capture_default_str();
  cmd->add_option("--format", flags.format, "output format: csv | json")
      ->check(CLI::IsMember({"csv", "json"}))
      ->capture_default_str();
  cmd->add_option("--out", flags.out_path, "output path (default: stdout)");
}

edelstein::RunConfig build_config(const CommonFlags& flags) {
  edelstein::RunConfig config;
  config.xi = edelstein::XiSchedule::parse(flags.xi);
  config.rel_tol = flags.rel_tol;
  config.format = flags.format == "json" ? edelstein::OutputFormat::Json
                                         : edelstein::OutputFormat::Csv;
  return config;
}

int run_with_output(const std::string& out_path, const std::function<int(std::ostream&)>& body) {
  if (out_path.empty()) return body(std::cout);
  std::ofstream file(out_path, std::ios::binary);
  if (!file) {
    std::cerr << "error: cannot open output path: " << out_path << "\n";
    return 3;
  }
  const int code = body(file);
  file.flush();
  if (!file) {
    std::cerr << "error: write failed for output path: " << out_path << "\n";
    return 3;
  }
  return code;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"certified dynamics of the factorial-angle affine isometry"};
  app.require_subcommand(1);
  app.set_config("--config", "",
                 "flat key=value config file (keys like orbit.n-max); flags override");
  app.fallthrough();

  CommonFlags orbit_flags, suborbit_flags, verify_flags, dr_flags;
  long orbit_min = 1, orbit_max = 250;
  long sub_min = 1, sub_max = 12;
  std::string family = "factorial";
  bool with_norms = false;
  long verify_min = 8, verify_max = 40;
  int van_min = 1, van_max = 12;
  int dr_k = 3;
  double dr_theta = 0.0, dr_x1 = 0.0, dr_x2 = 0.0;
  int dr_steps = 25;

  CLI::App* orbit = app.add_subcommand("orbit", "emit ||R^n 0||^2 rows over an index range");
  add_common(orbit, orbit_flags);
  orbit->add_option("--n-min", orbit_min)->capture_default_str();
  orbit->add_option("--n-max", orbit_max)->capture_default_str();

  CLI::App* suborbit = app.add_subcommand("suborbit", "emit one index family with norms and verdicts");
  add_common(suborbit, suborbit_flags);
  suborbit->add_option("--n-min", sub_min)->capture_default_str();
  suborbit->add_option("--n-max", sub_max)->capture_default_str();
  suborbit->add_option("--family", family, "factorial | edelstein | s")
      ->check(CLI::IsMember({"factorial", "edelstein", "s"}))
      ->capture_default_str();
  suborbit->add_flag("--norms", with_norms, "compute norms even for very large edelstein indices");

  CLI::App* verify = app.add_subcommand("verify", "run all certificates; nonzero exit on failure");
  add_common(verify, verify_flags);
  verify->add_option("--n-min", verify_min, "blow-up range start (theorem needs >= 8)")
      ->capture_default_str();
  verify->add_option("--n-max", verify_max, "blow-up range end")->capture_default_str();
  verify->add_option("--van-min", van_min, "vanishing range start")->capture_default_str();
  verify->add_option("--van-max", van_max, "vanishing range end")->capture_default_str();

  CLI::App* dr = app.add_subcommand("dr", "single-plane T vs Douglas-Rachford trajectory");
  add_common(dr, dr_flags);
  dr->add_option("--k", dr_k, "factorial angle index (theta = 2*pi/k!)")->capture_default_str();
  dr->add_option("--theta", dr_theta, "explicit angle in radians, overrides --k");
  dr->add_option("--x1", dr_x1, "start point x1")->capture_default_str();
  dr->add_option("--x2", dr_x2, "start point x2")->capture_default_str();
  dr->add_option("--steps", dr_steps)->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e);  // --help and friends
    app.exit(e);
    return 2;
  }

  try {
    if (orbit->parsed()) {
      edelstein::RunConfig config = build_config(orbit_flags);
      config.n_min = orbit_min;
      config.n_max = orbit_max;
      return run_with_output(orbit_flags.out_path,
                             [&](std::ostream& os) { return edelstein::cmd_orbit(config, os); });
    }
    if (suborbit->parsed()) {
      edelstein::RunConfig config = build_config(suborbit_flags);
      config.n_min = sub_min;
      config.n_max = sub_max;
      config.family = edelstein::parse_family(family);
      config.with_norms = with_norms;
      return run_with_output(suborbit_flags.out_path,
                             [&](std::ostream& os) { return edelstein::cmd_suborbit(config, os); });
    }
    if (verify->parsed()) {
      edelstein::RunConfig config = build_config(verify_flags);
      config.n_min = verify_min;
      config.n_max = verify_max;
      config.van_min = van_min;
      config.van_max = van_max;
      return run_with_output(verify_flags.out_path,
                             [&](std::ostream& os) { return edelstein::cmd_verify(config, os); });
    }
    if (dr->parsed()) {
      edelstein::RunConfig config = build_config(dr_flags);
      config.dr_k = dr_k;
      config.dr_theta = dr_theta;
      config.dr_x1 = dr_x1;
      config.dr_x2 = dr_x2;
      config.dr_steps = dr_steps;
      return run_with_output(dr_flags.out_path,
                             [&](std::ostream& os) { return edelstein::cmd_dr(config, os); });
    }
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::ios_base::failure& e) {
    std::cerr << "i/o error: " << e.what() << "\n";
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 2;
}
