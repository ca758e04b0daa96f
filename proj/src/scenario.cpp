#include "biphoton/scenario.hpp"

#include <cmath>
#include <stdexcept>

namespace biphoton {

namespace {

using Complex = std::complex<double>;

Eigen::VectorXcd axis_phase(const FrequencyGrid& grid, double z) {
  Eigen::VectorXcd p(grid.points);
  for (int i = 0; i < grid.points; ++i) p[i] = std::exp(Complex(0.0, grid.node(i) * z));
  return p;
}

}  // namespace

JointSpectrum apply_path_delay(const JointSpectrum& js, double z1, double z2) {
  JointSpectrum out = js;
  const FrequencyGrid& grid = js.grid;
  if (out.is_continuum()) {
    Eigen::MatrixXcd& c = std::get<ContinuumAmplitude>(out.amplitude).c;
    const Eigen::VectorXcd p1 = axis_phase(grid, z1);
    const Eigen::VectorXcd p2 = axis_phase(grid, z2);
    c = p1.asDiagonal() * c * p2.asDiagonal();
  } else if (out.is_perfect_correlation()) {
    // On the support nu2 = -nu1 the two delays combine into e^{i nu (z1 - z2)}.
    Eigen::VectorXcd& h = std::get<PerfectCorrelationAmplitude>(out.amplitude).h;
    h = h.cwiseProduct(axis_phase(grid, z1 - z2));
  } else {
    for (auto& a : std::get<AtomAmplitudes>(out.amplitude).atoms)
      a.amplitude *= std::exp(Complex(0.0, grid.node(a.node1) * z1 + grid.node(a.node2) * z2));
  }
  return out;
}

PolarizedJointSpectrum apply_path_delay(const PolarizedJointSpectrum& pjs, double z1, double z2) {
  PolarizedJointSpectrum out = pjs;
  out.aa = apply_path_delay(pjs.aa, z1, z2);
  out.bb = apply_path_delay(pjs.bb, z1, z2);
  out.ab = apply_path_delay(pjs.ab, z1, z2);
  out.ba = apply_path_delay(pjs.ba, z1, z2);
  return out;
}

JointSpectrum apply_mz(const JointSpectrum& js, double delta_L, double theta, int arm) {
  if (arm != 1 && arm != 2) throw std::invalid_argument("apply_mz: arm must be 1 or 2");
  if (delta_L < 0.0) throw std::invalid_argument("apply_mz: delta_L must be nonnegative");
  JointSpectrum out = js;
  const FrequencyGrid& grid = js.grid;

  const auto filter = [&](double nu) { return 2.0 * std::cos(nu * delta_L + theta); };
  if (out.is_continuum()) {
    Eigen::MatrixXcd& c = std::get<ContinuumAmplitude>(out.amplitude).c;
    for (int i = 0; i < grid.points; ++i) {
      const double f = filter(grid.node(i));
      if (arm == 1)
        c.row(i) *= f;
      else
        c.col(i) *= f;
    }
  } else if (out.is_perfect_correlation()) {
    // arm 2 sees nu2 = -nu1 on the support
    Eigen::VectorXcd& h = std::get<PerfectCorrelationAmplitude>(out.amplitude).h;
    for (int i = 0; i < grid.points; ++i) {
      const double nu = grid.node(i);
      h[i] *= filter(arm == 1 ? nu : -nu);
    }
  } else {
    for (auto& a : std::get<AtomAmplitudes>(out.amplitude).atoms)
      a.amplitude *= filter(grid.node(arm == 1 ? a.node1 : a.node2));
  }

  const double n2 = out.squared_norm();
  if (!(n2 > 1e-30))
    throw std::domain_error("apply_mz: interferometer annihilates the spectrum");
  const double scale = 1.0 / std::sqrt(n2);
  if (out.is_continuum())
    std::get<ContinuumAmplitude>(out.amplitude).c *= scale;
  else if (out.is_perfect_correlation())
    std::get<PerfectCorrelationAmplitude>(out.amplitude).h *= scale;
  else
    for (auto& a : std::get<AtomAmplitudes>(out.amplitude).atoms) a.amplitude *= scale;
  return out;
}

namespace {

JointSpectrum scaled_by_phase(const JointSpectrum& js, Complex phase) {
  JointSpectrum out = js;
  if (out.is_continuum())
    std::get<ContinuumAmplitude>(out.amplitude).c *= phase;
  else if (out.is_perfect_correlation())
    std::get<PerfectCorrelationAmplitude>(out.amplitude).h *= phase;
  else
    for (auto& a : std::get<AtomAmplitudes>(out.amplitude).atoms) a.amplitude *= phase;
  return out;
}

}  // namespace

PolarizedJointSpectrum apply_wave_plate(const PolarizedJointSpectrum& pjs, double theta,
                                        int path, Polarization polarization) {
  if (path != 1 && path != 2) throw std::invalid_argument("apply_wave_plate: path must be 1 or 2");
  const Complex phase = std::exp(Complex(0.0, theta));
  PolarizedJointSpectrum out = pjs;
  const bool alpha = polarization == Polarization::Alpha;
  // Channel labels order the path-1 photon first.
  if (path == 1) {
    if (alpha) {
      out.aa = scaled_by_phase(pjs.aa, phase);
      out.ab = scaled_by_phase(pjs.ab, phase);
    } else {
      out.bb = scaled_by_phase(pjs.bb, phase);
      out.ba = scaled_by_phase(pjs.ba, phase);
    }
  } else {
    if (alpha) {
      out.aa = scaled_by_phase(pjs.aa, phase);
      out.ba = scaled_by_phase(pjs.ba, phase);
    } else {
      out.bb = scaled_by_phase(pjs.bb, phase);
      out.ab = scaled_by_phase(pjs.ab, phase);
    }
  }
  return out;
}

ScenarioReport evaluate_scenario(const SourceState& source, const OpticalPath& path,
                                 const BeamSplitter& bs, double tol) {
  if (std::holds_alternative<JointSpectrum>(source)) {
    if (path.wave_plate)
      throw std::invalid_argument("evaluate_scenario: wave plate needs two polarization modes");
    JointSpectrum js = std::get<JointSpectrum>(source);
    if (path.mz) js = apply_mz(js, path.mz->delta_L, path.mz->theta, path.mz->arm);
    js = apply_path_delay(js, path.z1, path.z2);
    return pc_case1(js, bs, tol);
  }
  if (path.mz)
    throw std::invalid_argument(
        "evaluate_scenario: Mach-Zehnder arm is defined for one-polarization states");
  PolarizedJointSpectrum pjs = std::get<PolarizedJointSpectrum>(source);
  if (path.wave_plate)
    pjs = apply_wave_plate(pjs, path.wave_plate->theta, path.wave_plate->path,
                           path.wave_plate->polarization);
  pjs = apply_path_delay(pjs, path.z1, path.z2);
  return pc_case2(pjs, bs, tol);
}

const char* to_string(ScanParam p) {
  switch (p) {
    case ScanParam::DeltaZ: return "delta_z";
    case ScanParam::Theta: return "theta";
    case ScanParam::TwoTheta: return "two_theta";
    case ScanParam::DeltaL: return "delta_L";
  }
  return "delta_z";
}

ScanResult scan(const SourceState& source, const OpticalPath& path, const BeamSplitter& bs,
                ScanParam param, double from, double to, int steps, double tol) {
  if (steps < 2) throw std::invalid_argument("scan: need at least 2 steps");
  if ((param == ScanParam::TwoTheta || param == ScanParam::DeltaL) && !path.mz)
    throw std::invalid_argument("scan: parameter requires a Mach-Zehnder in the path");
  if (param == ScanParam::Theta && !std::holds_alternative<PolarizedJointSpectrum>(source))
    throw std::invalid_argument("scan: theta scans the wave plate of a two-polarization state");

  ScanResult result;
  result.param = param;
  result.rows.reserve(steps);
  for (int k = 0; k < steps; ++k) {
    const double value = from + k * (to - from) / (steps - 1);
    OpticalPath p = path;
    switch (param) {
      case ScanParam::DeltaZ:
        p.z1 = 0.0;
        p.z2 = value;
        break;
      case ScanParam::Theta:
        p.wave_plate = WavePlate{value, 1, Polarization::Beta};
        break;
      case ScanParam::TwoTheta:
        p.mz->theta = value / 2.0;
        break;
      case ScanParam::DeltaL:
        p.mz->delta_L = value;
        break;
    }
    const ScenarioReport report = evaluate_scenario(source, p, bs, tol);
    ScanRow row;
    row.value = value;
    if (std::holds_alternative<CoincidenceReport>(report)) {
      const auto& r = std::get<CoincidenceReport>(report);
      row.pc = r.pc;
      row.reference = r.reference;
      row.verdict = r.verdict;
    } else {
      const auto& r = std::get<ChannelReport>(report);
      row.case2 = true;
      row.pc = r.pc_total;
      row.reference = r.ref_total;
      row.verdict = r.verdict_total;
      row.pc_aa = r.pc_aa;
      row.pc_bb = r.pc_bb;
      row.pc_cross = r.pc_cross;
    }
    result.rows.push_back(row);
  }
  return result;
}

Eigen::MatrixXd contour_data(const JointSpectrum& js) {
  if (!js.is_continuum())
    throw std::invalid_argument("contour_data: continuum representation required");
  return js.continuum().real();
}

}  // namespace biphoton
