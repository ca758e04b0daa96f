#pragma once

#include <complex>
#include <variant>
#include <vector>

#include <Eigen/Dense>

#include "biphoton/grid.hpp"

namespace biphoton {

// Everything a constructor emits is renormalized numerically on the grid;
// tol_norm is the accepted defect.
inline constexpr double tol_norm = 1e-9;

enum class Polarization { Alpha, Beta };
enum class BellKind { PhiPlus, PhiMinus, PsiPlus, PsiMinus };

// Phase-matching factor g(nu1+nu2): Flat (g == 1, un-entangled), Gaussian
// with pump bandwidth sigma_p, or Delta (perfect frequency correlation).
struct PhaseMatching {
  enum class Kind { Flat, Gaussian, Delta };
  Kind kind = Kind::Flat;
  double sigma_p = 0.0;

  static PhaseMatching flat() { return {Kind::Flat, 0.0}; }
  static PhaseMatching gaussian(double sigma_p);
  static PhaseMatching delta() { return {Kind::Delta, 0.0}; }

  friend bool operator==(const PhaseMatching&, const PhaseMatching&) = default;
};

// One photon: complex amplitude C(nu) sampled on the grid. The squared norm
// equals `weight` (1 for single-mode states, n_jm for two-mode superpositions).
struct SinglePhotonSpectrum {
  FrequencyGrid grid;
  Eigen::VectorXcd amplitudes;
  double center_offset = 0.0;
  double weight = 1.0;

  double squared_norm() const;
};

// C(nu1,nu2) as a density matrix on grid x grid; row index = nu1, col = nu2.
struct ContinuumAmplitude {
  Eigen::MatrixXcd c;
};

// Finite set of monochromatic components with dimensionless amplitudes
// (Kronecker weights, no grid-spacing factor in the norm).
struct SpectralAtom {
  int node1 = 0;
  int node2 = 0;
  std::complex<double> amplitude;
};
struct AtomAmplitudes {
  std::vector<SpectralAtom> atoms;
};

// Perfectly correlated pair: C(nu1,nu2) = h(nu1) * delta(nu1+nu2).
// h is the two-photon envelope evaluated on the support, h(nu) = C_env(nu,-nu).
struct PerfectCorrelationAmplitude {
  Eigen::VectorXcd h;
};

struct JointSpectrum {
  FrequencyGrid grid;
  std::variant<ContinuumAmplitude, AtomAmplitudes, PerfectCorrelationAmplitude> amplitude;

  bool is_continuum() const { return std::holds_alternative<ContinuumAmplitude>(amplitude); }
  bool is_atoms() const { return std::holds_alternative<AtomAmplitudes>(amplitude); }
  bool is_perfect_correlation() const {
    return std::holds_alternative<PerfectCorrelationAmplitude>(amplitude);
  }

  const Eigen::MatrixXcd& continuum() const;
  const std::vector<SpectralAtom>& atoms() const;
  const Eigen::VectorXcd& correlation_envelope() const;

  double squared_norm() const;
};

// Two-polarization wavepacket: four channels keyed by the polarizations of
// the path-1 and path-2 photons. Each channel's squared norm equals its
// weight (the channels are sub-normalized; the weights sum to 1).
struct PolarizedJointSpectrum {
  JointSpectrum aa, bb, ab, ba;
  double n_aa = 0.0, n_bb = 0.0, n_ab = 0.0, n_ba = 0.0;

  double weight_sum() const { return n_aa + n_bb + n_ab + n_ba; }
};

// --- constructors -----------------------------------------------------------

// Gaussian single-photon amplitude exp[-(nu-center)^2/(2 width^2)] e^{i nu z},
// renormalized to weight 1. Rejects width <= 0 and spectra whose +-3 width
// core does not fit on the grid (the sampled spectrum would be truncated).
SinglePhotonSpectrum gaussian_single(double center, double width, double phase_path,
                                     const FrequencyGrid& grid);

// Rescales a single-photon spectrum so its squared norm equals `weight`.
SinglePhotonSpectrum with_weight(SinglePhotonSpectrum s, double weight);

// Un-entangled pair C(nu1,nu2) = C1(nu1) C2(nu2), renormalized to 1.
JointSpectrum product_spectrum(const SinglePhotonSpectrum& s1, const SinglePhotonSpectrum& s2);

// Type-I downconversion pair: g(nu1+nu2) exp[-((nu1+dW/2)^2+(nu2-dW/2)^2)/(2 sigma^2)]
// where dW = delta_omega is the separation of the two central frequencies and
// detunings are measured about the mean central frequency. Delta phase
// matching yields the PerfectCorrelation representation.
JointSpectrum spdc_type1(double delta_omega, double sigma, const PhaseMatching& pm,
                         const FrequencyGrid& grid);

// Monochromatic Bell pair at frequencies node1, node2 (each must lie on a
// grid node). Atoms representation with amplitudes +-1/sqrt(2).
JointSpectrum bell_case1(BellKind kind, double node1, double node2, const FrequencyGrid& grid);

// Type-II downconversion pair (Eq.-(18)-style): cross channels only, with the
// relative phase e^{i theta} on the beta-alpha channel and weights 1/2 each.
PolarizedJointSpectrum spdc_type2(double omega_alpha, double omega_beta, double sigma_alpha,
                                  double sigma_beta, const PhaseMatching& pm, double theta,
                                  const FrequencyGrid& grid);

// Two identical independent photons in a two-mode superposition, with a
// wave-plate phase e^{i theta} on the path-1 beta amplitude. The weights of
// c_alpha and c_beta must sum to 1; channel weights become
// n_aa = w_a^2, n_bb = w_b^2, n_ab = n_ba = w_a w_b.
PolarizedJointSpectrum two_mode_product(const SinglePhotonSpectrum& c_alpha,
                                        const SinglePhotonSpectrum& c_beta, double theta);

// --- analysis ----------------------------------------------------------------

struct SymmetrySplit {
  double s_norm = 0.0;  // ||(C + C^T)/2||^2
  double a_norm = 0.0;  // ||(C - C^T)/2||^2
};

// Squared norms of the symmetric and antisymmetric parts. For a normalized
// spectrum s_norm + a_norm = 1, and a_norm equals the 50/50 coincidence
// probability. Continuum and Atoms representations only.
SymmetrySplit symmetry_decompose(const JointSpectrum& js);

// Discrete Fourier sum  C~(t1,t2) = sum C(nu1,nu2) e^{i nu1 t1} e^{i nu2 t2} * spacing^2
// on a uniform t_points x t_points time lattice over [t_min, t_max].
Eigen::MatrixXcd to_time_domain(const JointSpectrum& js, double t_min, double t_max,
                                int t_points);

}  // namespace biphoton
