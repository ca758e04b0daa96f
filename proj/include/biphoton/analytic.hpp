#pragma once

#include "biphoton/spectrum.hpp"

namespace biphoton::analytic {

// Closed-form coincidence probabilities for the Gaussian scenarios. This
// module is an independent oracle for the quadrature engine: it never touches
// grids or sampled spectra. All lengths are the dimensionless products
// (length * sigma / c); frequencies are in units of the relevant bandwidth's
// reference.

// Type-I pair of Gaussian wavepackets with bandwidths sigma1, sigma2, central
// frequency difference delta_omega and beam-splitter displacement delta_z.
struct Type1Params {
  double sigma1 = 1.0;
  double sigma2 = 1.0;
  PhaseMatching pm = PhaseMatching::flat();
  double delta_omega = 0.0;
  double delta_z = 0.0;
};

// Equal bandwidths: pc = 1/2 [1 - e^{-dz^2 s^2/2} e^{-(dW/s)^2/2}] for any
// phase matching. Unequal bandwidths route through the effective-bandwidth
// form (Gaussian/Delta pump) or the independent-photon form (Flat).
double pc_type1(const Type1Params& p);

struct EffectiveBandwidths {
  double sigma_s = 0.0;  // spatial coherence bandwidth
  double sigma_f = 0.0;  // frequency-range bandwidth
};

// sigma_s = sqrt(2 s1^2 s2^2 / (s1^2+s2^2)),
// sigma_f = sqrt((sp^2 (s1^2+s2^2) + 4 s1^2 s2^2) / (2 (sp^2+s1^2+s2^2))).
// sigma_p = 0 gives sigma_f = sigma_s; sigma_p = +inf gives the flat limit.
EffectiveBandwidths effective_bandwidths(double sigma1, double sigma2, double sigma_p);

// Pump-to-photon bandwidth ratio for the Mach-Zehnder scenario. Delta and
// Flat are explicit markers, not sentinel floats.
struct MzBeta {
  enum class Kind { Delta, Ratio, Flat };
  Kind kind = Kind::Ratio;
  double value = 1.0;

  static MzBeta delta() { return {Kind::Delta, 0.0}; }
  static MzBeta ratio(double beta);
  static MzBeta flat() { return {Kind::Flat, 0.0}; }
};

// Unbalanced Mach-Zehnder in one input arm: arm half-difference delta_L,
// carrier phase theta (the paper's theta = Omega dL / c, kept independent
// here because the simulator works in detuning units), displacement delta_z.
struct MzParams {
  MzBeta beta;
  double delta_L = 0.0;  // (L_l - L_s)/2 * sigma/c
  double theta = 0.0;
  double delta_z = 0.0;  // (z2 - z1) * sigma/c
};

// The three-term interference formula; Delta and Flat markers route to the
// exact limiting forms. Throws std::domain_error when the interferometer
// extinguishes the beam entirely (delta_L = 0 with cos(2 theta) = -1).
double pc_mz(const MzParams& p);

// Type-II scenario parameters. sigma_p = 0 encodes perfect correlation and
// +inf the flat (un-entangled) pump limit. n_alpha/n_beta are the mode
// weights of the independent-photon variant and must sum to 1 there.
struct Type2Params {
  double omega_alpha = 0.0;
  double omega_beta = 0.0;
  double sigma_alpha = 1.0;
  double sigma_beta = 1.0;
  double sigma_p = 1.0;
  double theta = 0.0;
  double delta_z = 0.0;
  double n_alpha = 0.5;
  double n_beta = 0.5;
};

// Polarization-entangled pair:
//   pc = 1/2 {1 - cos[(Wb-Wa) dz - theta] e^{-dz^2 s^2/2}},
// with s = sigma_alpha when the bandwidths are equal, else the effective
// bandwidth sqrt((sp^2 sa^2 + sp^2 sb^2 + 4 sa^2 sb^2)/(2 (sp^2+sa^2+sb^2))).
double pc_type2_entangled(const Type2Params& p);

struct Type2IndependentPc {
  double pc_mm_alpha = 0.0;
  double pc_mm_beta = 0.0;
  double pc_cross = 0.0;
  double pc_total = 0.0;
};

// Two independent photons in a two-mode superposition:
//   pc_mm    = 1/2 n_m^2 [1 - e^{-dz^2 sm^2/2}]   (single-mode bandwidth sm)
//   pc_cross = n_a n_b {1 - cos[(Wb-Wa) dz - theta] e^{-dz^2 (sa^2+sb^2)/4}}
//   pc_total = their sum.
Type2IndependentPc pc_type2_independent(const Type2Params& p);

}  // namespace biphoton::analytic
