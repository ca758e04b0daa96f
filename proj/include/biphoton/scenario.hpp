#pragma once

#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "biphoton/coincidence.hpp"
#include "biphoton/spectrum.hpp"

namespace biphoton {

// Unbalanced Mach-Zehnder inserted in one input beam: the arm's axis is
// multiplied by 2 cos(nu dL + theta) and the state renormalized.
struct MzArm {
  double delta_L = 0.0;
  double theta = 0.0;
  int arm = 1;  // which input beam carries the interferometer (1 or 2)
};

// Wave plate adding phase e^{i theta} to one polarization in one path.
struct WavePlate {
  double theta = 0.0;
  int path = 1;
  Polarization polarization = Polarization::Beta;
};

struct OpticalPath {
  double z1 = 0.0;
  double z2 = 0.0;
  std::optional<MzArm> mz;
  std::optional<WavePlate> wave_plate;
};

// C <- C e^{i(nu1 z1 + nu2 z2)}; norm unchanged.
JointSpectrum apply_path_delay(const JointSpectrum& js, double z1, double z2);
PolarizedJointSpectrum apply_path_delay(const PolarizedJointSpectrum& pjs, double z1, double z2);

// Multiplies the arm's axis by 2 cos(nu dL + theta), then renormalizes.
// Throws std::domain_error when the filter annihilates the state.
JointSpectrum apply_mz(const JointSpectrum& js, double delta_L, double theta, int arm);

// Multiplies the channels whose chosen-path photon has the chosen
// polarization by e^{i theta}; weights and norms unchanged.
PolarizedJointSpectrum apply_wave_plate(const PolarizedJointSpectrum& pjs, double theta,
                                        int path, Polarization polarization);

using SourceState = std::variant<JointSpectrum, PolarizedJointSpectrum>;
using ScenarioReport = std::variant<CoincidenceReport, ChannelReport>;

// Runs one scenario: MZ (case I) or wave plate (case II), then path delays,
// then the beam splitter, and reports the coincidence probabilities.
ScenarioReport evaluate_scenario(const SourceState& source, const OpticalPath& path,
                                 const BeamSplitter& bs, double tol = default_classify_tol);

enum class ScanParam { DeltaZ, Theta, TwoTheta, DeltaL };

const char* to_string(ScanParam p);

struct ScanRow {
  double value = 0.0;
  double pc = 0.0;
  double reference = 0.0;
  Verdict verdict = Verdict::NONE;
  bool case2 = false;
  double pc_aa = 0.0, pc_bb = 0.0, pc_cross = 0.0;  // case II only
};

struct ScanResult {
  ScanParam param = ScanParam::DeltaZ;
  std::vector<ScanRow> rows;
};

// Evaluates the scenario on the uniform parameter lattice from..to (steps
// points, steps >= 2), in lattice order. DeltaZ sets (z1, z2) = (0, value);
// Theta scans the wave-plate phase of a two-polarization source; TwoTheta and
// DeltaL scan the Mach-Zehnder carrier phase (value = 2 theta) and arm
// difference and require an MZ in the path.
ScanResult scan(const SourceState& source, const OpticalPath& path, const BeamSplitter& bs,
                ScanParam param, double from, double to, int steps,
                double tol = default_classify_tol);

// Envelope of a continuum spectrum on the (nu1, nu2) lattice: the real part,
// whose sign carries the bright/dark structure of the contour plots.
// Path-delay phases are deliberately absent (z1 = z2 = 0 scenarios only).
Eigen::MatrixXd contour_data(const JointSpectrum& js);

}  // namespace biphoton
