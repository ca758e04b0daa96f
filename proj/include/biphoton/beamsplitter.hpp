#pragma once

#include <Eigen/Dense>

#include "biphoton/spectrum.hpp"

namespace biphoton {

// Lossless beam splitter. theta sets the splitting ratio (pi/4 = 50/50);
// phi_tau and phi_rho are the two free phases of the unitary.
struct BeamSplitter {
  double theta = 0.0;
  double phi_tau = 0.0;
  double phi_rho = 0.0;

  double phi() const { return phi_tau + phi_rho; }

  static BeamSplitter fifty_fifty() { return {M_PI / 4.0, 0.0, 0.0}; }
};

// S(theta, phi_tau, phi_rho) =
//   [  e^{i phi_tau} cos(theta)   e^{i phi_rho} sin(theta) ]
//   [ -e^{-i phi_rho} sin(theta)  e^{-i phi_tau} cos(theta) ]
Eigen::Matrix2cd bs_matrix(const BeamSplitter& bs);

// S(-theta, -phi_tau, phi_rho); satisfies bs_matrix(bs) * bs_inverse(bs) = I.
Eigen::Matrix2cd bs_inverse(const BeamSplitter& bs);

// Output of the transform on a one-polarization pair.
//
//   amp_coinc(i,j)  coefficient of a1+(nu_i) a2+(nu_j)           (full matrix)
//   amp_both1(i,j)  coefficient of a1+(nu_i) a1+(nu_j), i <= j   (upper triangle)
//   amp_both2(i,j)  same for port 2
//
// A doubly occupied diagonal mode (i == j) carries occupancy norm factor 2
// in the probabilities. `continuum` selects quadrature weights (trapezoid)
// versus dimensionless atom weights.
struct OutputStateCase1 {
  FrequencyGrid grid;
  bool continuum = true;
  Eigen::MatrixXcd amp_coinc;
  Eigen::MatrixXcd amp_both1;
  Eigen::MatrixXcd amp_both2;
};

// Applies the beam-splitter unitary to a one-polarization pair:
//   amp_coinc = C cos^2(theta) - C^T sin^2(theta)
//   amp_both1(i<=j) = [C(i,j)+C(j,i)] e^{i phi} cos(theta) sin(theta)  (half on the diagonal)
//   amp_both2 analogous with -e^{-i phi}.
// PerfectCorrelation inputs are rejected; use the coincidence module's
// reduced rule for those.
OutputStateCase1 transform_case1(const JointSpectrum& js, const BeamSplitter& bs);

// Output of the transform on a two-polarization pair. The same-polarization
// sectors transform channel-wise like case I. In the cross sector the alpha
// and beta photons are distinguishable, so all matrices run over the full
// (nu_i, nu_j) plane:
//
//   cross_coinc_ab(i,j)  coefficient of a1alpha+(nu_i) a2beta+(nu_j)
//   cross_coinc_ba(i,j)  coefficient of a2alpha+(nu_i) a1beta+(nu_j)
//   cross_both1(i,j)     coefficient of a1alpha+(nu_i) a1beta+(nu_j)
//   cross_both2(i,j)     coefficient of a2alpha+(nu_i) a2beta+(nu_j)
struct OutputStateCase2 {
  FrequencyGrid grid;
  bool continuum = true;
  OutputStateCase1 aa;
  OutputStateCase1 bb;
  Eigen::MatrixXcd cross_coinc_ab;
  Eigen::MatrixXcd cross_coinc_ba;
  Eigen::MatrixXcd cross_both1;
  Eigen::MatrixXcd cross_both2;
};

OutputStateCase2 transform_case2(const PolarizedJointSpectrum& pjs, const BeamSplitter& bs);

// Total output probability (all sectors); 1 for a normalized input.
double total_probability(const OutputStateCase1& out);
double total_probability(const OutputStateCase2& out);

}  // namespace biphoton
