#include <fstream>
#include <iostream>
#include <limits>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "biphoton/analytic.hpp"
#include "biphoton/commands.hpp"
#include "biphoton/config.hpp"

namespace {

constexpr int exit_ok = 0;
constexpr int exit_validation_failed = 1;
constexpr int exit_usage = 2;

biphoton::ScenarioConfig load_config(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot read config file '" + path + "'");
  std::ostringstream text;
  text << in.rdbuf();
  return biphoton::parse_config(text.str());
}

biphoton::ScanParam param_from(const std::string& name) {
  if (name == "delta_z") return biphoton::ScanParam::DeltaZ;
  if (name == "theta") return biphoton::ScanParam::Theta;
  if (name == "two_theta") return biphoton::ScanParam::TwoTheta;
  if (name == "delta_L") return biphoton::ScanParam::DeltaL;
  throw std::runtime_error("unknown scan parameter '" + name +
                           "' (expected delta_z, theta, two_theta, or delta_L)");
}

// Shared numeric grammar with the config files: plain decimals or "<number>pi".
double number_flag(const std::string& text, const char* flag) {
  try {
    return biphoton::parse_number(text);
  } catch (const std::invalid_argument&) {
    throw std::runtime_error(std::string("bad value for ") + flag + ": '" + text + "'");
  }
}

biphoton::PhaseMatching pm_flag(const std::string& name, const std::string& sigma_p) {
  if (name == "flat") return biphoton::PhaseMatching::flat();
  if (name == "delta") return biphoton::PhaseMatching::delta();
  if (name == "gaussian") {
    if (sigma_p.empty()) throw std::runtime_error("--phase-matching gaussian needs --sigma-p");
    return biphoton::PhaseMatching::gaussian(number_flag(sigma_p, "--sigma-p"));
  }
  throw std::runtime_error("unknown phase matching '" + name + "'");
}

biphoton::analytic::MzBeta beta_flag(const std::string& text) {
  if (text == "delta") return biphoton::analytic::MzBeta::delta();
  if (text == "flat") return biphoton::analytic::MzBeta::flat();
  return biphoton::analytic::MzBeta::ratio(number_flag(text, "--beta"));
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"two-photon wavepacket interference in a lossless beam splitter"};
  app.require_subcommand(1);

  std::string config_path, out_path, param_name = "delta_z";
  std::string from_text = "-5", to_text = "5";
  int steps = 21;
  double tol = 1e-6;

  CLI::App* scan_cmd = app.add_subcommand("scan", "scan a parameter and emit pc rows as CSV");
  scan_cmd->add_option("--config", config_path, "scenario config file")->required();
  scan_cmd->add_option("--param", param_name, "delta_z | theta | two_theta | delta_L")->required();
  scan_cmd->add_option("--from", from_text, "scan start (accepts e.g. 0.5pi)")->required();
  scan_cmd->add_option("--to", to_text, "scan end")->required();
  scan_cmd->add_option("--steps", steps, "lattice point count (>= 2)")->required();
  scan_cmd->add_option("--out", out_path, "output CSV path")->required();
  scan_cmd->add_option("--tol", tol, "verdict classification tolerance");

  CLI::App* contour_cmd = app.add_subcommand("contour", "emit the spectral envelope as CSV");
  contour_cmd->add_option("--config", config_path, "scenario config file")->required();
  contour_cmd->add_option("--out", out_path, "output CSV path")->required();

  CLI::App* validate_cmd =
      app.add_subcommand("validate", "compare quadrature against the closed form");
  validate_cmd->add_option("--config", config_path, "scenario config file")->required();
  validate_cmd->add_option("--param", param_name, "scan parameter (default delta_z)");
  validate_cmd->add_option("--from", from_text, "lattice start (default -5)");
  validate_cmd->add_option("--to", to_text, "lattice end (default 5)");
  validate_cmd->add_option("--steps", steps, "lattice point count (default 21)");
  validate_cmd->add_option("--tol", tol, "max accepted |quadrature - analytic|");

  CLI::App* analytic_cmd =
      app.add_subcommand("analytic", "evaluate a closed-form coincidence probability");
  analytic_cmd->require_subcommand(1);

  std::string a_sigma1 = "1", a_sigma2 = "1", a_pm = "flat", a_sigma_p, a_delta_omega = "0",
              a_delta_z = "0", a_beta = "1", a_delta_L = "0", a_theta = "0", a_omega_alpha = "0",
              a_omega_beta = "0", a_n_alpha = "0.5";

  CLI::App* type1 = analytic_cmd->add_subcommand("type1", "pair of Gaussian wavepackets");
  type1->add_option("--sigma1", a_sigma1, "bandwidth of photon 1");
  type1->add_option("--sigma2", a_sigma2, "bandwidth of photon 2");
  type1->add_option("--phase-matching", a_pm, "flat | gaussian | delta");
  type1->add_option("--sigma-p", a_sigma_p, "pump bandwidth (gaussian)");
  type1->add_option("--delta-omega", a_delta_omega, "central frequency difference");
  type1->add_option("--delta-z", a_delta_z, "beam-splitter displacement");

  CLI::App* mz = analytic_cmd->add_subcommand("mz", "unbalanced Mach-Zehnder in one arm");
  mz->add_option("--beta", a_beta, "sigma_p / sigma, or delta | flat");
  mz->add_option("--delta-L", a_delta_L, "arm half-difference (times sigma/c)");
  mz->add_option("--theta", a_theta, "carrier phase");
  mz->add_option("--delta-z", a_delta_z, "displacement (times sigma/c)");

  CLI::App* type2 = analytic_cmd->add_subcommand("type2", "polarization-entangled pair");
  CLI::App* type2i =
      analytic_cmd->add_subcommand("type2-independent", "independent two-mode photons");
  for (CLI::App* cmd : {type2, type2i}) {
    cmd->add_option("--omega-alpha", a_omega_alpha, "alpha central detuning");
    cmd->add_option("--omega-beta", a_omega_beta, "beta central detuning");
    cmd->add_option("--sigma-alpha", a_sigma1, "alpha bandwidth");
    cmd->add_option("--sigma-beta", a_sigma2, "beta bandwidth");
    cmd->add_option("--theta", a_theta, "wave-plate phase");
    cmd->add_option("--delta-z", a_delta_z, "displacement");
  }
  type2->add_option("--sigma-p", a_sigma_p, "pump bandwidth (0 = delta, inf = flat)");
  type2i->add_option("--n-alpha", a_n_alpha, "alpha mode weight");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return exit_usage;
  }

  try {
    if (*scan_cmd) {
      const auto config = load_config(config_path);
      if (steps < 2) throw std::runtime_error("--steps must be at least 2");
      biphoton::cmd_scan(config, param_from(param_name), number_flag(from_text, "--from"),
                         number_flag(to_text, "--to"), steps, out_path, tol);
      return exit_ok;
    }
    if (*contour_cmd) {
      biphoton::cmd_contour(load_config(config_path), out_path);
      return exit_ok;
    }
    if (*validate_cmd) {
      const auto report = biphoton::cmd_validate(
          load_config(config_path), param_from(param_name), number_flag(from_text, "--from"),
          number_flag(to_text, "--to"), steps, tol);
      if (report.no_oracle) {
        std::cout << "NO ORACLE: " << report.message << "\n";
        return exit_ok;
      }
      for (const auto& check : report.checks)
        std::cout << check.name << ": max deviation " << biphoton::format_number(check.max_deviation)
                  << " -> " << (check.pass ? "PASS" : "FAIL") << "\n";
      return report.all_pass() ? exit_ok : exit_validation_failed;
    }
    if (*type1) {
      biphoton::analytic::Type1Params p;
      p.sigma1 = number_flag(a_sigma1, "--sigma1");
      p.sigma2 = number_flag(a_sigma2, "--sigma2");
      p.pm = pm_flag(a_pm, a_sigma_p);
      p.delta_omega = number_flag(a_delta_omega, "--delta-omega");
      p.delta_z = number_flag(a_delta_z, "--delta-z");
      std::cout << "pc = " << biphoton::format_number(biphoton::analytic::pc_type1(p)) << "\n";
      return exit_ok;
    }
    if (*mz) {
      biphoton::analytic::MzParams p;
      p.beta = beta_flag(a_beta);
      p.delta_L = number_flag(a_delta_L, "--delta-L");
      p.theta = number_flag(a_theta, "--theta");
      p.delta_z = number_flag(a_delta_z, "--delta-z");
      std::cout << "pc = " << biphoton::format_number(biphoton::analytic::pc_mz(p)) << "\n";
      return exit_ok;
    }
    if (*type2 || *type2i) {
      biphoton::analytic::Type2Params p;
      p.omega_alpha = number_flag(a_omega_alpha, "--omega-alpha");
      p.omega_beta = number_flag(a_omega_beta, "--omega-beta");
      p.sigma_alpha = number_flag(a_sigma1, "--sigma-alpha");
      p.sigma_beta = number_flag(a_sigma2, "--sigma-beta");
      p.theta = number_flag(a_theta, "--theta");
      p.delta_z = number_flag(a_delta_z, "--delta-z");
      if (*type2) {
        p.sigma_p = a_sigma_p.empty() || a_sigma_p == "inf"
                        ? std::numeric_limits<double>::infinity()
                        : number_flag(a_sigma_p, "--sigma-p");
        std::cout << "pc = "
                  << biphoton::format_number(biphoton::analytic::pc_type2_entangled(p)) << "\n";
      } else {
        p.n_alpha = number_flag(a_n_alpha, "--n-alpha");
        p.n_beta = 1.0 - p.n_alpha;
        const auto pc = biphoton::analytic::pc_type2_independent(p);
        std::cout << "pc_aa = " << biphoton::format_number(pc.pc_mm_alpha) << "\n"
                  << "pc_bb = " << biphoton::format_number(pc.pc_mm_beta) << "\n"
                  << "pc_cross = " << biphoton::format_number(pc.pc_cross) << "\n"
                  << "pc_total = " << biphoton::format_number(pc.pc_total) << "\n";
      }
      return exit_ok;
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return exit_usage;
  }
  return exit_usage;
}
