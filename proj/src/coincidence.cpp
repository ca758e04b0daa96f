#include "biphoton/coincidence.hpp"

#include <cmath>
#include <map>
#include <stdexcept>

namespace biphoton {

namespace {

using Complex = std::complex<double>;

// Re iint C(nu1,nu2) C'*(nu2,nu1) for two spectra sharing a representation.
// For PerfectCorrelation pairs this is the regularized Re int h(nu) h'*(-nu).
double interference_raw(const JointSpectrum& a, const JointSpectrum& b) {
  if (a.is_perfect_correlation() != b.is_perfect_correlation())
    throw std::invalid_argument("coincidence: spectra mix representations");
  if (a.is_perfect_correlation()) {
    const Eigen::VectorXcd& ha = a.correlation_envelope();
    const Eigen::VectorXcd& hb = b.correlation_envelope();
    const Eigen::VectorXd w = a.grid.quadrature_weights();
    Complex acc = 0.0;
    const int n = a.grid.points;
    for (int i = 0; i < n; ++i) acc += w[i] * ha[i] * std::conj(hb[n - 1 - i]);
    return acc.real();
  }
  if (a.is_continuum() && b.is_continuum()) {
    const Eigen::VectorXd w = a.grid.quadrature_weights();
    const Eigen::MatrixXcd& ca = a.continuum();
    const Eigen::MatrixXcd& cb = b.continuum();
    Complex acc = 0.0;
    for (int i = 0; i < ca.rows(); ++i)
      for (int j = 0; j < ca.cols(); ++j)
        acc += w[i] * w[j] * ca(i, j) * std::conj(cb(j, i));
    return acc.real();
  }
  if (a.is_atoms() && b.is_atoms()) {
    std::map<std::pair<int, int>, Complex> bm;
    for (const auto& atom : b.atoms()) bm[{atom.node1, atom.node2}] += atom.amplitude;
    Complex acc = 0.0;
    for (const auto& atom : a.atoms()) {
      const auto it = bm.find({atom.node2, atom.node1});
      if (it != bm.end()) acc += atom.amplitude * std::conj(it->second);
    }
    return acc.real();
  }
  throw std::invalid_argument("coincidence: spectra mix representations");
}

void require_norm(const JointSpectrum& js, double expected, const char* who) {
  if (std::abs(js.squared_norm() - expected) > 1e-6)
    throw std::invalid_argument(std::string(who) + ": unnormalized input spectrum");
}

struct Split {
  double t = 0.0;  // cos^2 theta
  double s = 0.0;  // sin^2 theta
  double reference_unit = 0.0;  // cos^4 + sin^4
};

Split split_of(const BeamSplitter& bs) {
  Split sp;
  sp.t = std::cos(bs.theta) * std::cos(bs.theta);
  sp.s = std::sin(bs.theta) * std::sin(bs.theta);
  sp.reference_unit = sp.t * sp.t + sp.s * sp.s;
  return sp;
}

// iint |C cos^2 - C^T sin^2|^2 = (t^2+s^2) ||C||^2 - 2 t s Re iint C C*^T,
// evaluated in that closed form for every representation.
double coincidence_raw(const JointSpectrum& js, const Split& sp) {
  return sp.reference_unit * js.squared_norm() - 2.0 * sp.t * sp.s * interference_raw(js, js);
}

}  // namespace

const char* to_string(Verdict v) {
  switch (v) {
    case Verdict::CI: return "CI";
    case Verdict::ACI: return "ACI";
    case Verdict::NONE: return "NONE";
  }
  return "NONE";
}

Verdict classify(double pc, double reference, double tol) {
  if (!(tol > 0.0)) throw std::invalid_argument("classify: tol must be positive");
  if (pc < reference - tol) return Verdict::CI;
  if (pc > reference + tol) return Verdict::ACI;
  return Verdict::NONE;
}

double interference_term(const JointSpectrum& js) { return interference_raw(js, js); }

CoincidenceReport pc_case1(const JointSpectrum& js, const BeamSplitter& bs, double tol) {
  require_norm(js, 1.0, "pc_case1");
  const Split sp = split_of(bs);
  CoincidenceReport report;
  report.reference = sp.reference_unit;
  const double interference = interference_raw(js, js);
  report.interference_term = 2.0 * sp.t * sp.s * interference / sp.reference_unit;
  report.pc = coincidence_raw(js, sp);
  report.verdict = classify(report.pc, report.reference, tol);
  return report;
}

ChannelReport pc_case2(const PolarizedJointSpectrum& pjs, const BeamSplitter& bs, double tol) {
  if (std::abs(pjs.weight_sum() - 1.0) > 1e-6)
    throw std::invalid_argument("pc_case2: channel weights must sum to 1");
  const Split sp = split_of(bs);

  ChannelReport report;
  report.pc_aa = coincidence_raw(pjs.aa, sp);
  report.pc_bb = coincidence_raw(pjs.bb, sp);
  // P_c^{ab} + P_c^{ba} = (t^2+s^2)(n_ab + n_ba) - 4 t s Re iint C_ab C_ba*^T
  report.pc_cross = sp.reference_unit * (pjs.n_ab + pjs.n_ba) -
                    4.0 * sp.t * sp.s * interference_raw(pjs.ab, pjs.ba);
  report.pc_total = report.pc_aa + report.pc_bb + report.pc_cross;

  report.ref_aa = sp.reference_unit * pjs.n_aa;
  report.ref_bb = sp.reference_unit * pjs.n_bb;
  report.ref_cross = sp.reference_unit * (pjs.n_ab + pjs.n_ba);
  report.ref_total = report.ref_aa + report.ref_bb + report.ref_cross;

  report.verdict_aa = classify(report.pc_aa, report.ref_aa, tol);
  report.verdict_bb = classify(report.pc_bb, report.ref_bb, tol);
  report.verdict_cross = classify(report.pc_cross, report.ref_cross, tol);
  report.verdict_total = classify(report.pc_total, report.ref_total, tol);
  return report;
}

PortProbabilities port_probabilities(const OutputStateCase1& out) {
  const Eigen::VectorXd w = out.grid.quadrature_weights();
  PortProbabilities p;
  const int n = out.grid.points;
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      const double wij = out.continuum ? w[i] * w[j] : 1.0;
      p.p_coinc += wij * std::norm(out.amp_coinc(i, j));
      if (j >= i) {
        const double occ = (i == j) ? 2.0 : 1.0;
        p.p_both1 += occ * wij * std::norm(out.amp_both1(i, j));
        p.p_both2 += occ * wij * std::norm(out.amp_both2(i, j));
      }
    }
  }
  return p;
}

}  // namespace biphoton
