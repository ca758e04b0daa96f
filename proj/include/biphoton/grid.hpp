#pragma once

#include <Eigen/Dense>

namespace biphoton {

// Uniform detuning grid, symmetric about zero, on which all spectra are
// sampled. Frequencies are in units of a reference bandwidth sigma_ref and
// positions in units of c/sigma_ref, so nu*z products are dimensionless.
//
// The point count is odd so that nu = 0 is a node and the reflection
// nu <-> -nu maps grid nodes onto grid nodes exactly (index i -> points-1-i).
struct FrequencyGrid {
  double nu_max = 6.0;
  int points = 257;

  double nu_min() const { return -nu_max; }
  double spacing() const { return 2.0 * nu_max / (points - 1); }
  int centre_index() const { return (points - 1) / 2; }

  // node(centre_index + k) == -node(centre_index - k) exactly in floating point
  double node(int i) const { return (i - centre_index()) * spacing(); }
  int reflected(int i) const { return points - 1 - i; }

  Eigen::VectorXd nodes() const;

  // Trapezoidal quadrature weights (spacing at interior nodes, spacing/2 at
  // the two boundary nodes).
  Eigen::VectorXd quadrature_weights() const;

  friend bool operator==(const FrequencyGrid&, const FrequencyGrid&) = default;
};

// Builds the symmetric grid [-nu_max, nu_max]. Throws std::invalid_argument
// for nu_max <= 0 or a point count that is even or below 3.
FrequencyGrid make_grid(double nu_max, int points);

}  // namespace biphoton
