#include "biphoton/commands.hpp"

#include <cmath>
#include <functional>
#include <limits>

#include "biphoton/analytic.hpp"

namespace biphoton {

namespace {

bool is_fifty_fifty(const ScenarioConfig& c) {
  return std::abs(c.bs_theta - M_PI / 4.0) < 1e-12;
}

std::vector<std::string> scan_header(ScanParam param, bool case2) {
  std::vector<std::string> h{to_string(param), "pc", "reference", "verdict"};
  if (case2) {
    h.insert(h.end(), {"pc_aa", "pc_bb", "pc_cross"});
  }
  return h;
}

}  // namespace

CsvTable cmd_scan(const ScenarioConfig& config, ScanParam param, double from, double to,
                  int steps, const std::filesystem::path& out_path, double tol) {
  const SourceState source = build_source(config);
  const ScanResult result =
      scan(source, build_path(config), build_beamsplitter(config), param, from, to, steps, tol);

  const bool case2 = !result.rows.empty() && result.rows.front().case2;
  CsvTable table;
  table.header = scan_header(param, case2);
  for (const ScanRow& row : result.rows) {
    std::vector<std::string> cells{format_number(row.value), format_number(row.pc),
                                   format_number(row.reference), to_string(row.verdict)};
    if (case2) {
      cells.push_back(format_number(row.pc_aa));
      cells.push_back(format_number(row.pc_bb));
      cells.push_back(format_number(row.pc_cross));
    }
    table.rows.push_back(std::move(cells));
  }
  write_atomic(out_path, table.to_string());
  return table;
}

CsvTable cmd_contour(const ScenarioConfig& config, const std::filesystem::path& out_path) {
  const SourceState source = build_source(config);
  if (!std::holds_alternative<JointSpectrum>(source))
    throw std::invalid_argument("contour: a one-polarization spectrum is required");
  JointSpectrum js = std::get<JointSpectrum>(source);
  const OpticalPath path = build_path(config);
  if (path.mz) js = apply_mz(js, path.mz->delta_L, path.mz->theta, path.mz->arm);
  // The contour shows the envelope: path-delay phases are omitted (z1 = z2 = 0).
  const Eigen::MatrixXd values = contour_data(js);

  CsvTable table;
  table.header = {"nu1", "nu2", "value"};
  const FrequencyGrid& grid = js.grid;
  for (int i = 0; i < grid.points; ++i)
    for (int j = 0; j < grid.points; ++j)
      table.rows.push_back({format_number(grid.node(i)), format_number(grid.node(j)),
                            format_number(values(i, j))});
  write_atomic(out_path, table.to_string());
  return table;
}

bool ValidationReport::all_pass() const {
  for (const auto& check : checks)
    if (!check.pass) return false;
  return true;
}

namespace {

// Named closed-form values for one lattice point; empty name list = no oracle.
using OracleFn = std::function<std::vector<std::pair<std::string, double>>(double)>;

struct OracleSetup {
  OracleFn fn;
  std::string why_none;  // set when fn is empty
};

analytic::MzBeta beta_of(const PhaseMatching& pm, double sigma) {
  switch (pm.kind) {
    case PhaseMatching::Kind::Delta: return analytic::MzBeta::delta();
    case PhaseMatching::Kind::Flat: return analytic::MzBeta::flat();
    case PhaseMatching::Kind::Gaussian: return analytic::MzBeta::ratio(pm.sigma_p / sigma);
  }
  return analytic::MzBeta::flat();
}

double pm_sigma_p(const PhaseMatching& pm) {
  switch (pm.kind) {
    case PhaseMatching::Kind::Delta: return 0.0;
    case PhaseMatching::Kind::Flat: return std::numeric_limits<double>::infinity();
    case PhaseMatching::Kind::Gaussian: return pm.sigma_p;
  }
  return 0.0;
}

OracleSetup resolve_oracle(const ScenarioConfig& c, ScanParam param) {
  if (!is_fifty_fifty(c))
    return {nullptr, "closed forms cover the 50/50 beam splitter only"};

  const bool has_mz = c.mz_delta_L.has_value();
  switch (c.kind) {
    case SpectrumKind::ProductGaussian:
    case SpectrumKind::SpdcType1: {
      const double s1 = c.sigma ? *c.sigma : c.sigma1.value();
      const double s2 = c.sigma ? *c.sigma : c.sigma2.value();
      const double dw = c.delta_omega.value_or(0.0);
      const PhaseMatching pm = c.kind == SpectrumKind::ProductGaussian
                                   ? PhaseMatching::flat()
                                   : c.phase_matching.value();
      if (!has_mz) {
        if (param != ScanParam::DeltaZ)
          return {nullptr, "only delta_z scans have a closed form for this source"};
        return {[=](double dz) {
                  analytic::Type1Params p{s1, s2, pm, dw, dz};
                  return std::vector<std::pair<std::string, double>>{
                      {"pc", analytic::pc_type1(p)}};
                },
                ""};
      }
      if (s1 != s2)
        return {nullptr, "the Mach-Zehnder closed form needs equal bandwidths"};
      if (dw != 0.0)
        return {nullptr, "the Mach-Zehnder closed form needs degenerate central frequencies"};
      const double sigma = s1;
      const analytic::MzBeta beta = beta_of(pm, sigma);
      const double dL0 = *c.mz_delta_L, th0 = c.mz_theta.value_or(0.0), dz0 = c.delta_z;
      return {[=](double v) {
                analytic::MzParams p{beta, dL0 * sigma, th0, dz0 * sigma};
                if (param == ScanParam::DeltaZ) p.delta_z = v * sigma;
                if (param == ScanParam::TwoTheta) p.theta = v / 2.0;
                if (param == ScanParam::DeltaL) p.delta_L = v * sigma;
                return std::vector<std::pair<std::string, double>>{
                    {"pc", analytic::pc_mz(p)}};
              },
              ""};
    }
    case SpectrumKind::SpdcType2:
    case SpectrumKind::TwoModeProduct: {
      const double sa = c.sigma ? *c.sigma : c.sigma1.value();
      const double sb = c.sigma ? *c.sigma : c.sigma2.value();
      analytic::Type2Params base;
      base.omega_alpha = c.omega_alpha.value_or(0.0);
      base.omega_beta = c.omega_beta.value_or(0.0);
      base.sigma_alpha = sa;
      base.sigma_beta = sb;
      base.theta = c.theta.value_or(0.0) + c.wave_plate_theta.value_or(0.0);
      base.delta_z = c.delta_z;
      const bool independent = c.kind == SpectrumKind::TwoModeProduct;
      if (independent) {
        base.n_alpha = c.n_alpha.value_or(0.5);
        base.n_beta = 1.0 - base.n_alpha;
      } else {
        base.sigma_p = pm_sigma_p(c.phase_matching.value());
      }
      if (param != ScanParam::DeltaZ && param != ScanParam::Theta)
        return {nullptr, "only delta_z and theta scans have closed forms for this source"};
      const double theta0 = c.theta.value_or(0.0);
      return {[=](double v) {
                analytic::Type2Params p = base;
                if (param == ScanParam::DeltaZ) p.delta_z = v;
                // A theta scan replaces the wave plate, so the effective phase
                // is the source phase plus the scanned plate phase.
                if (param == ScanParam::Theta) p.theta = theta0 + v;
                std::vector<std::pair<std::string, double>> values;
                if (independent) {
                  const analytic::Type2IndependentPc pc = analytic::pc_type2_independent(p);
                  values = {{"pc_aa", pc.pc_mm_alpha},
                            {"pc_bb", pc.pc_mm_beta},
                            {"pc_cross", pc.pc_cross},
                            {"pc_total", pc.pc_total}};
                } else {
                  values = {{"pc_total", analytic::pc_type2_entangled(p)}};
                }
                return values;
              },
              ""};
    }
    default:
      return {nullptr, "no closed form is defined for this spectrum kind"};
  }
}

}  // namespace

ValidationReport cmd_validate(const ScenarioConfig& config, ScanParam param, double from,
                              double to, int steps, double tol) {
  ValidationReport report;
  const OracleSetup oracle = resolve_oracle(config, param);
  if (!oracle.fn) {
    report.no_oracle = true;
    report.message = oracle.why_none;
    return report;
  }

  const SourceState source = build_source(config);
  const ScanResult scanned =
      scan(source, build_path(config), build_beamsplitter(config), param, from, to, steps);

  std::vector<ValidationCheck> checks;
  for (const ScanRow& row : scanned.rows) {
    const auto expected = oracle.fn(row.value);
    if (checks.empty()) {
      for (const auto& [name, unused] : expected)
        checks.push_back(ValidationCheck{name, 0.0, false});
    }
    for (size_t k = 0; k < expected.size(); ++k) {
      double got = row.pc;
      const std::string& name = expected[k].first;
      if (name == "pc_aa") got = row.pc_aa;
      else if (name == "pc_bb") got = row.pc_bb;
      else if (name == "pc_cross") got = row.pc_cross;
      checks[k].max_deviation =
          std::max(checks[k].max_deviation, std::abs(got - expected[k].second));
    }
  }
  for (auto& check : checks) check.pass = check.max_deviation <= tol;
  report.checks = std::move(checks);
  return report;
}

}  // namespace biphoton
