#include "biphoton/grid.hpp"

#include <stdexcept>

namespace biphoton {

Eigen::VectorXd FrequencyGrid::nodes() const {
  Eigen::VectorXd v(points);
  for (int i = 0; i < points; ++i) v[i] = node(i);
  return v;
}

Eigen::VectorXd FrequencyGrid::quadrature_weights() const {
  Eigen::VectorXd w = Eigen::VectorXd::Constant(points, spacing());
  w[0] *= 0.5;
  w[points - 1] *= 0.5;
  return w;
}

FrequencyGrid make_grid(double nu_max, int points) {
  if (!(nu_max > 0.0)) throw std::invalid_argument("make_grid: nu_max must be positive");
  if (points < 3) throw std::invalid_argument("make_grid: need at least 3 points");
  if (points % 2 == 0)
    throw std::invalid_argument("make_grid: point count must be odd so nu = 0 is a node");
  return FrequencyGrid{nu_max, points};
}

}  // namespace biphoton
