#include "biphoton/spectrum.hpp"

#include <cmath>
#include <map>
#include <stdexcept>
#include <utility>

namespace biphoton {

namespace {

using Complex = std::complex<double>;

double continuum_norm2(const FrequencyGrid& grid, const Eigen::MatrixXcd& c) {
  const Eigen::VectorXd w = grid.quadrature_weights();
  return (w.asDiagonal() * c.cwiseAbs2() * w.asDiagonal()).sum();
}

double vector_norm2(const FrequencyGrid& grid, const Eigen::VectorXcd& h) {
  return grid.quadrature_weights().dot(h.cwiseAbs2());
}

// Locates nu on the grid; throws if it is not a node.
int node_index(const FrequencyGrid& grid, double nu, const char* who) {
  const double step = grid.spacing();
  const double fractional = nu / step + grid.centre_index();
  const int i = static_cast<int>(std::lround(fractional));
  if (i < 0 || i >= grid.points || std::abs(grid.node(i) - nu) > 1e-9)
    throw std::invalid_argument(std::string(who) + ": frequency " + std::to_string(nu) +
                                " is not a grid node");
  return i;
}

Eigen::VectorXcd sampled_gaussian(const FrequencyGrid& grid, double center, double width,
                                  double phase_path) {
  Eigen::VectorXcd a(grid.points);
  for (int i = 0; i < grid.points; ++i) {
    const double nu = grid.node(i);
    const double d = (nu - center) / width;
    a[i] = std::exp(-0.5 * d * d) * std::exp(Complex(0.0, nu * phase_path));
  }
  return a;
}

}  // namespace

PhaseMatching PhaseMatching::gaussian(double sigma_p) {
  if (!(sigma_p > 0.0))
    throw std::invalid_argument("PhaseMatching::gaussian: sigma_p must be positive");
  return {Kind::Gaussian, sigma_p};
}

double SinglePhotonSpectrum::squared_norm() const { return vector_norm2(grid, amplitudes); }

const Eigen::MatrixXcd& JointSpectrum::continuum() const {
  if (!is_continuum())
    throw std::invalid_argument("JointSpectrum: not a continuum representation");
  return std::get<ContinuumAmplitude>(amplitude).c;
}

const std::vector<SpectralAtom>& JointSpectrum::atoms() const {
  if (!is_atoms()) throw std::invalid_argument("JointSpectrum: not an atoms representation");
  return std::get<AtomAmplitudes>(amplitude).atoms;
}

const Eigen::VectorXcd& JointSpectrum::correlation_envelope() const {
  if (!is_perfect_correlation())
    throw std::invalid_argument("JointSpectrum: not a perfect-correlation representation");
  return std::get<PerfectCorrelationAmplitude>(amplitude).h;
}

double JointSpectrum::squared_norm() const {
  if (is_continuum()) return continuum_norm2(grid, continuum());
  if (is_perfect_correlation()) return vector_norm2(grid, correlation_envelope());
  double n = 0.0;
  for (const auto& a : atoms()) n += std::norm(a.amplitude);
  return n;
}

SinglePhotonSpectrum gaussian_single(double center, double width, double phase_path,
                                     const FrequencyGrid& grid) {
  if (!(width > 0.0)) throw std::invalid_argument("gaussian_single: width must be positive");
  if (center + 3.0 * width > grid.nu_max || center - 3.0 * width < grid.nu_min())
    throw std::domain_error(
        "gaussian_single: spectrum truncated, center +- 3 width falls outside the grid");
  SinglePhotonSpectrum s{grid, sampled_gaussian(grid, center, width, phase_path), center, 1.0};
  s.amplitudes /= std::sqrt(s.squared_norm());
  return s;
}

SinglePhotonSpectrum with_weight(SinglePhotonSpectrum s, double weight) {
  if (weight < 0.0) throw std::invalid_argument("with_weight: weight must be nonnegative");
  const double n = s.squared_norm();
  if (!(n > 0.0)) throw std::invalid_argument("with_weight: spectrum has zero norm");
  s.amplitudes *= std::sqrt(weight / n);
  s.weight = weight;
  return s;
}

JointSpectrum product_spectrum(const SinglePhotonSpectrum& s1, const SinglePhotonSpectrum& s2) {
  if (!(s1.grid == s2.grid))
    throw std::invalid_argument("product_spectrum: mismatched grids");
  Eigen::MatrixXcd c = s1.amplitudes * s2.amplitudes.transpose();
  c /= std::sqrt(continuum_norm2(s1.grid, c));
  return JointSpectrum{s1.grid, ContinuumAmplitude{std::move(c)}};
}

JointSpectrum spdc_type1(double delta_omega, double sigma, const PhaseMatching& pm,
                         const FrequencyGrid& grid) {
  if (!(sigma > 0.0)) throw std::invalid_argument("spdc_type1: sigma must be positive");
  const double d = delta_omega / 2.0;  // photon 1 centered at -d, photon 2 at +d

  if (pm.kind == PhaseMatching::Kind::Delta) {
    // Envelope on the correlation support nu2 = -nu1:
    // exp(-[(nu+d)^2 + (-nu-d)^2] / (2 sigma^2)) = exp(-(nu+d)^2 / sigma^2)
    Eigen::VectorXcd h(grid.points);
    for (int i = 0; i < grid.points; ++i) {
      const double nu = grid.node(i);
      h[i] = std::exp(-(nu + d) * (nu + d) / (sigma * sigma));
    }
    h /= std::sqrt(vector_norm2(grid, h));
    return JointSpectrum{grid, PerfectCorrelationAmplitude{std::move(h)}};
  }

  const bool gaussian_pm = pm.kind == PhaseMatching::Kind::Gaussian;
  if (gaussian_pm && !(pm.sigma_p > 0.0))
    throw std::invalid_argument("spdc_type1: Gaussian phase matching needs sigma_p > 0");
  Eigen::MatrixXcd c(grid.points, grid.points);
  for (int i = 0; i < grid.points; ++i) {
    const double n1 = grid.node(i);
    for (int j = 0; j < grid.points; ++j) {
      const double n2 = grid.node(j);
      double e = ((n1 + d) * (n1 + d) + (n2 - d) * (n2 - d)) / (2.0 * sigma * sigma);
      if (gaussian_pm) e += (n1 + n2) * (n1 + n2) / (2.0 * pm.sigma_p * pm.sigma_p);
      c(i, j) = std::exp(-e);
    }
  }
  c /= std::sqrt(continuum_norm2(grid, c));
  return JointSpectrum{grid, ContinuumAmplitude{std::move(c)}};
}

JointSpectrum bell_case1(BellKind kind, double node1, double node2, const FrequencyGrid& grid) {
  const int i1 = node_index(grid, node1, "bell_case1");
  const int i2 = node_index(grid, node2, "bell_case1");
  const double r = 1.0 / std::sqrt(2.0);
  std::vector<SpectralAtom> atoms;
  switch (kind) {
    case BellKind::PhiPlus:
      atoms = {{i1, i1, r}, {i2, i2, r}};
      break;
    case BellKind::PhiMinus:
      atoms = {{i1, i1, r}, {i2, i2, -r}};
      break;
    case BellKind::PsiPlus:
      if (i1 == i2) throw std::invalid_argument("bell_case1: Psi states need node1 != node2");
      atoms = {{i1, i2, r}, {i2, i1, r}};
      break;
    case BellKind::PsiMinus:
      if (i1 == i2) throw std::invalid_argument("bell_case1: Psi states need node1 != node2");
      atoms = {{i1, i2, r}, {i2, i1, -r}};
      break;
  }

  // Merge coinciding components (Phi states with node1 == node2) and renormalize.
  std::map<std::pair<int, int>, Complex> merged;
  for (const auto& a : atoms) merged[{a.node1, a.node2}] += a.amplitude;
  atoms.clear();
  double n2 = 0.0;
  for (const auto& [key, amp] : merged) {
    if (std::norm(amp) == 0.0) continue;
    atoms.push_back({key.first, key.second, amp});
    n2 += std::norm(amp);
  }
  if (!(n2 > 0.0)) throw std::invalid_argument("bell_case1: state has zero norm");
  for (auto& a : atoms) a.amplitude /= std::sqrt(n2);
  return JointSpectrum{grid, AtomAmplitudes{std::move(atoms)}};
}

PolarizedJointSpectrum spdc_type2(double omega_alpha, double omega_beta, double sigma_alpha,
                                  double sigma_beta, const PhaseMatching& pm, double theta,
                                  const FrequencyGrid& grid) {
  if (!(sigma_alpha > 0.0) || !(sigma_beta > 0.0))
    throw std::invalid_argument("spdc_type2: bandwidths must be positive");
  const Complex phase = std::exp(Complex(0.0, theta));
  const double pump_center = omega_alpha + omega_beta;  // nu1 + nu2 at which g peaks

  PolarizedJointSpectrum out;
  out.aa = JointSpectrum{grid, AtomAmplitudes{}};
  out.bb = JointSpectrum{grid, AtomAmplitudes{}};
  out.n_ab = out.n_ba = 0.5;

  if (pm.kind == PhaseMatching::Kind::Delta) {
    if (std::abs(pump_center) > 1e-12)
      throw std::invalid_argument(
          "spdc_type2: Delta phase matching needs omega_alpha + omega_beta = 0");
    Eigen::VectorXcd hab(grid.points), hba(grid.points);
    for (int i = 0; i < grid.points; ++i) {
      const double nu = grid.node(i);
      // envelopes on the support nu2 = -nu1
      const double ea = (nu - omega_alpha) * (nu - omega_alpha) / (2.0 * sigma_alpha * sigma_alpha);
      const double eb = (-nu - omega_beta) * (-nu - omega_beta) / (2.0 * sigma_beta * sigma_beta);
      hab[i] = std::exp(-(ea + eb));
      const double fb = (nu - omega_beta) * (nu - omega_beta) / (2.0 * sigma_beta * sigma_beta);
      const double fa = (-nu - omega_alpha) * (-nu - omega_alpha) / (2.0 * sigma_alpha * sigma_alpha);
      hba[i] = phase * std::exp(-(fb + fa));
    }
    hab *= std::sqrt(0.5 / vector_norm2(grid, hab));
    hba *= std::sqrt(0.5 / vector_norm2(grid, hba));
    out.ab = JointSpectrum{grid, PerfectCorrelationAmplitude{std::move(hab)}};
    out.ba = JointSpectrum{grid, PerfectCorrelationAmplitude{std::move(hba)}};
    return out;
  }

  const bool gaussian_pm = pm.kind == PhaseMatching::Kind::Gaussian;
  if (gaussian_pm && !(pm.sigma_p > 0.0))
    throw std::invalid_argument("spdc_type2: Gaussian phase matching needs sigma_p > 0");
  Eigen::MatrixXcd cab(grid.points, grid.points), cba(grid.points, grid.points);
  for (int i = 0; i < grid.points; ++i) {
    const double n1 = grid.node(i);
    for (int j = 0; j < grid.points; ++j) {
      const double n2 = grid.node(j);
      double g = 0.0;
      if (gaussian_pm) {
        const double x = n1 + n2 - pump_center;
        g = x * x / (2.0 * pm.sigma_p * pm.sigma_p);
      }
      const double ea = (n1 - omega_alpha) * (n1 - omega_alpha) / (2.0 * sigma_alpha * sigma_alpha);
      const double eb = (n2 - omega_beta) * (n2 - omega_beta) / (2.0 * sigma_beta * sigma_beta);
      cab(i, j) = std::exp(-(g + ea + eb));
      const double fb = (n1 - omega_beta) * (n1 - omega_beta) / (2.0 * sigma_beta * sigma_beta);
      const double fa = (n2 - omega_alpha) * (n2 - omega_alpha) / (2.0 * sigma_alpha * sigma_alpha);
      cba(i, j) = phase * std::exp(-(g + fb + fa));
    }
  }
  cab *= std::sqrt(0.5 / continuum_norm2(grid, cab));
  cba *= std::sqrt(0.5 / continuum_norm2(grid, cba));
  out.ab = JointSpectrum{grid, ContinuumAmplitude{std::move(cab)}};
  out.ba = JointSpectrum{grid, ContinuumAmplitude{std::move(cba)}};
  return out;
}

PolarizedJointSpectrum two_mode_product(const SinglePhotonSpectrum& c_alpha,
                                        const SinglePhotonSpectrum& c_beta, double theta) {
  if (!(c_alpha.grid == c_beta.grid))
    throw std::invalid_argument("two_mode_product: mismatched grids");
  const double wa = c_alpha.weight, wb = c_beta.weight;
  if (std::abs(wa + wb - 1.0) > tol_norm)
    throw std::invalid_argument("two_mode_product: mode weights must sum to 1");
  const Complex phase = std::exp(Complex(0.0, theta));
  const FrequencyGrid& grid = c_alpha.grid;
  const Eigen::VectorXcd& a = c_alpha.amplitudes;
  const Eigen::VectorXcd& b = c_beta.amplitudes;

  PolarizedJointSpectrum out;
  out.aa = JointSpectrum{grid, ContinuumAmplitude{a * a.transpose()}};
  out.bb = JointSpectrum{grid, ContinuumAmplitude{phase * (b * b.transpose())}};
  out.ab = JointSpectrum{grid, ContinuumAmplitude{a * b.transpose()}};
  out.ba = JointSpectrum{grid, ContinuumAmplitude{phase * (b * a.transpose())}};
  out.n_aa = wa * wa;
  out.n_bb = wb * wb;
  out.n_ab = out.n_ba = wa * wb;
  return out;
}

SymmetrySplit symmetry_decompose(const JointSpectrum& js) {
  if (js.is_perfect_correlation())
    throw std::invalid_argument(
        "symmetry_decompose: continuum or atoms representation required");
  SymmetrySplit split;
  if (js.is_continuum()) {
    const Eigen::MatrixXcd& c = js.continuum();
    const Eigen::MatrixXcd s = 0.5 * (c + c.transpose());
    const Eigen::MatrixXcd a = 0.5 * (c - c.transpose());
    split.s_norm = continuum_norm2(js.grid, s);
    split.a_norm = continuum_norm2(js.grid, a);
    return split;
  }
  std::map<std::pair<int, int>, Complex> amp;
  for (const auto& atom : js.atoms()) amp[{atom.node1, atom.node2}] += atom.amplitude;
  for (const auto& [key, value] : amp) {
    const auto it = amp.find({key.second, key.first});
    const Complex mirrored = it == amp.end() ? Complex(0.0) : it->second;
    split.s_norm += std::norm(0.5 * (value + mirrored));
    split.a_norm += std::norm(0.5 * (value - mirrored));
  }
  return split;
}

Eigen::MatrixXcd to_time_domain(const JointSpectrum& js, double t_min, double t_max,
                                int t_points) {
  if (t_points < 2 || !(t_max > t_min))
    throw std::invalid_argument("to_time_domain: empty time window");
  const FrequencyGrid& grid = js.grid;
  Eigen::VectorXd times(t_points);
  for (int k = 0; k < t_points; ++k)
    times[k] = t_min + k * (t_max - t_min) / (t_points - 1);

  // F(i,k) = exp(i nu_i tau_k)
  Eigen::MatrixXcd f(grid.points, t_points);
  for (int i = 0; i < grid.points; ++i)
    for (int k = 0; k < t_points; ++k)
      f(i, k) = std::exp(Complex(0.0, grid.node(i) * times[k]));

  const double s = grid.spacing();
  if (js.is_continuum())
    return (f.transpose() * js.continuum() * f) * (s * s);
  if (js.is_perfect_correlation()) {
    // C~(t1,t2) = sum_i h_i exp(i nu_i (t1 - t2)) * spacing
    Eigen::MatrixXcd out(t_points, t_points);
    const Eigen::VectorXcd& h = js.correlation_envelope();
    for (int k = 0; k < t_points; ++k)
      for (int l = 0; l < t_points; ++l) {
        Complex acc = 0.0;
        for (int i = 0; i < grid.points; ++i)
          acc += h[i] * std::exp(Complex(0.0, grid.node(i) * (times[k] - times[l])));
        out(k, l) = acc * s;
      }
    return out;
  }
  Eigen::MatrixXcd out = Eigen::MatrixXcd::Zero(t_points, t_points);
  for (const auto& atom : js.atoms()) {
    const double n1 = grid.node(atom.node1), n2 = grid.node(atom.node2);
    for (int k = 0; k < t_points; ++k)
      for (int l = 0; l < t_points; ++l)
        out(k, l) += atom.amplitude * std::exp(Complex(0.0, n1 * times[k] + n2 * times[l]));
  }
  return out;
}

}  // namespace biphoton
