#include "biphoton/beamsplitter.hpp"

#include <cmath>
#include <stdexcept>

namespace biphoton {

namespace {

using Complex = std::complex<double>;

Complex phase(double arg) { return std::exp(Complex(0.0, arg)); }

// Densifies a continuum or atoms spectrum; PerfectCorrelation is rejected.
Eigen::MatrixXcd dense_amplitude(const JointSpectrum& js, bool& continuum) {
  if (js.is_perfect_correlation())
    throw std::invalid_argument(
        "transform: PerfectCorrelation spectra have no grid transform; "
        "use the reduced coincidence rule");
  if (js.is_continuum()) {
    continuum = true;
    return js.continuum();
  }
  continuum = false;
  Eigen::MatrixXcd c = Eigen::MatrixXcd::Zero(js.grid.points, js.grid.points);
  for (const auto& a : js.atoms()) c(a.node1, a.node2) += a.amplitude;
  return c;
}

// Sum of W_ij |m_ij|^2 over the full plane.
double weighted_norm2(const FrequencyGrid& grid, bool continuum, const Eigen::MatrixXcd& m) {
  if (!continuum) return m.cwiseAbs2().sum();
  const Eigen::VectorXd w = grid.quadrature_weights();
  return (w.asDiagonal() * m.cwiseAbs2() * w.asDiagonal()).sum();
}

// Upper-triangle sum with occupancy factor 2 on the diagonal.
double both_port_norm2(const FrequencyGrid& grid, bool continuum, const Eigen::MatrixXcd& m) {
  const Eigen::VectorXd w = grid.quadrature_weights();
  double total = 0.0;
  for (int i = 0; i < m.rows(); ++i) {
    for (int j = i; j < m.cols(); ++j) {
      const double wij = continuum ? w[i] * w[j] : 1.0;
      total += (i == j ? 2.0 : 1.0) * wij * std::norm(m(i, j));
    }
  }
  return total;
}

}  // namespace

Eigen::Matrix2cd bs_matrix(const BeamSplitter& bs) {
  Eigen::Matrix2cd s;
  s(0, 0) = phase(bs.phi_tau) * std::cos(bs.theta);
  s(0, 1) = phase(bs.phi_rho) * std::sin(bs.theta);
  s(1, 0) = -phase(-bs.phi_rho) * std::sin(bs.theta);
  s(1, 1) = phase(-bs.phi_tau) * std::cos(bs.theta);
  return s;
}

Eigen::Matrix2cd bs_inverse(const BeamSplitter& bs) {
  return bs_matrix(BeamSplitter{-bs.theta, -bs.phi_tau, bs.phi_rho});
}

OutputStateCase1 transform_case1(const JointSpectrum& js, const BeamSplitter& bs) {
  OutputStateCase1 out;
  out.grid = js.grid;
  const Eigen::MatrixXcd c = dense_amplitude(js, out.continuum);

  const double t = std::cos(bs.theta) * std::cos(bs.theta);
  const double s = std::sin(bs.theta) * std::sin(bs.theta);
  const double x = std::cos(bs.theta) * std::sin(bs.theta);
  const Complex e_plus = phase(bs.phi()) * x;
  const Complex e_minus = -phase(-bs.phi()) * x;

  out.amp_coinc = t * c - s * c.transpose();
  const int n = js.grid.points;
  out.amp_both1 = Eigen::MatrixXcd::Zero(n, n);
  out.amp_both2 = Eigen::MatrixXcd::Zero(n, n);
  for (int i = 0; i < n; ++i) {
    out.amp_both1(i, i) = e_plus * c(i, i);
    out.amp_both2(i, i) = e_minus * c(i, i);
    for (int j = i + 1; j < n; ++j) {
      const Complex sym = c(i, j) + c(j, i);
      out.amp_both1(i, j) = e_plus * sym;
      out.amp_both2(i, j) = e_minus * sym;
    }
  }
  return out;
}

OutputStateCase2 transform_case2(const PolarizedJointSpectrum& pjs, const BeamSplitter& bs) {
  OutputStateCase2 out;
  out.grid = pjs.ab.grid;
  out.aa = transform_case1(pjs.aa, bs);
  out.bb = transform_case1(pjs.bb, bs);

  bool ab_cont = false, ba_cont = false;
  const Eigen::MatrixXcd cab = dense_amplitude(pjs.ab, ab_cont);
  const Eigen::MatrixXcd cba = dense_amplitude(pjs.ba, ba_cont);
  if (ab_cont != ba_cont)
    throw std::invalid_argument("transform_case2: cross channels mix representations");
  out.continuum = ab_cont;

  const double t = std::cos(bs.theta) * std::cos(bs.theta);
  const double s = std::sin(bs.theta) * std::sin(bs.theta);
  const double x = std::cos(bs.theta) * std::sin(bs.theta);
  const Eigen::MatrixXcd cba_swapped = cba.transpose();

  out.cross_coinc_ab = t * cab - s * cba_swapped;
  out.cross_coinc_ba = -(s * cab - t * cba_swapped);
  out.cross_both1 = (phase(bs.phi()) * x) * (cab + cba_swapped);
  out.cross_both2 = (-phase(-bs.phi()) * x) * (cab + cba_swapped);
  return out;
}

double total_probability(const OutputStateCase1& out) {
  return weighted_norm2(out.grid, out.continuum, out.amp_coinc) +
         both_port_norm2(out.grid, out.continuum, out.amp_both1) +
         both_port_norm2(out.grid, out.continuum, out.amp_both2);
}

double total_probability(const OutputStateCase2& out) {
  return total_probability(out.aa) + total_probability(out.bb) +
         weighted_norm2(out.grid, out.continuum, out.cross_coinc_ab) +
         weighted_norm2(out.grid, out.continuum, out.cross_coinc_ba) +
         weighted_norm2(out.grid, out.continuum, out.cross_both1) +
         weighted_norm2(out.grid, out.continuum, out.cross_both2);
}

}  // namespace biphoton
