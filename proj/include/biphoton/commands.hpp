#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "biphoton/config.hpp"
#include "biphoton/csv.hpp"

namespace biphoton {

// Runs a parameter scan and writes `param,pc,reference,verdict` rows
// (plus pc_aa,pc_bb,pc_cross for two-polarization scenarios) to out_path.
CsvTable cmd_scan(const ScenarioConfig& config, ScanParam param, double from, double to,
                  int steps, const std::filesystem::path& out_path,
                  double tol = default_classify_tol);

// Emits the spectral envelope as `nu1,nu2,value` rows, row-major over the
// grid. Continuum case-I spectra only.
CsvTable cmd_contour(const ScenarioConfig& config, const std::filesystem::path& out_path);

struct ValidationCheck {
  std::string name;
  double max_deviation = 0.0;
  bool pass = false;
};

struct ValidationReport {
  bool no_oracle = false;    // config has no closed form; not a failure
  std::string message;       // why, when no_oracle
  std::vector<ValidationCheck> checks;

  bool all_pass() const;
};

// Compares quadrature against the matching closed form over the scan lattice
// and reports the maximum absolute deviation per check.
ValidationReport cmd_validate(const ScenarioConfig& config, ScanParam param, double from,
                              double to, int steps, double tol);

}  // namespace biphoton
