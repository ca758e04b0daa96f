#pragma once

#include "biphoton/beamsplitter.hpp"
#include "biphoton/spectrum.hpp"

namespace biphoton {

enum class Verdict { CI, ACI, NONE };

const char* to_string(Verdict v);

// Default classification tolerance: quadrature error, not physics, sets the floor.
inline constexpr double default_classify_tol = 1e-6;

// NONE if |pc - reference| <= tol, CI below, ACI above.
Verdict classify(double pc, double reference, double tol);

struct CoincidenceReport {
  double pc = 0.0;                 // probability of a click-click event
  double reference = 0.5;         // absence-of-interference baseline
  double interference_term = 0.0;  // pc == reference * (1 - interference_term)
  Verdict verdict = Verdict::NONE;
};

// Coincidence probability for a one-polarization pair. At 50/50,
// pc = 1/4 integral |C(nu1,nu2) - C(nu2,nu1)|^2 with reference 1/2; for a
// general splitting angle pc = integral |C cos^2 - C^T sin^2|^2 with
// reference cos^4 + sin^4. PerfectCorrelation inputs use the reduced rule
//   pc = (cos^4+sin^4) - 2 cos^2 sin^2 * Re int h(nu) h*(-nu) / int |h|^2.
// Throws std::invalid_argument for an unnormalized input.
CoincidenceReport pc_case1(const JointSpectrum& js, const BeamSplitter& bs,
                           double tol = default_classify_tol);

// The normalized interference integral Re iint C(nu1,nu2) C*(nu2,nu1);
// zero iff the NONE verdict holds at 50/50.
double interference_term(const JointSpectrum& js);

struct ChannelReport {
  double pc_aa = 0.0, pc_bb = 0.0, pc_cross = 0.0, pc_total = 0.0;
  double ref_aa = 0.0, ref_bb = 0.0, ref_cross = 0.0, ref_total = 0.0;
  Verdict verdict_aa = Verdict::NONE;
  Verdict verdict_bb = Verdict::NONE;
  Verdict verdict_cross = Verdict::NONE;
  Verdict verdict_total = Verdict::NONE;
};

// Polarization-sensitive coincidence probabilities. Same-polarization
// channels follow the case-I rule on each sub-normalized channel; the cross
// value is P_c^{ab} + P_c^{ba} with reference (cos^4+sin^4)(n_ab + n_ba).
// pc_total is their sum (polarization-insensitive detection).
ChannelReport pc_case2(const PolarizedJointSpectrum& pjs, const BeamSplitter& bs,
                       double tol = default_classify_tol);

struct PortProbabilities {
  double p_both1 = 0.0;
  double p_both2 = 0.0;
  double p_coinc = 0.0;
};

// Splits the output norm into both-photons-at-port-1 / port-2 / coincidence.
PortProbabilities port_probabilities(const OutputStateCase1& out);

}  // namespace biphoton
