#include "biphoton/analytic.hpp"

#include <cmath>
#include <stdexcept>

namespace biphoton::analytic {

namespace {

double sq(double x) { return x * x; }

}  // namespace

EffectiveBandwidths effective_bandwidths(double sigma1, double sigma2, double sigma_p) {
  if (!(sigma1 > 0.0) || !(sigma2 > 0.0) || sigma_p < 0.0)
    throw std::invalid_argument("effective_bandwidths: bandwidths must be positive");
  EffectiveBandwidths eb;
  const double s12 = sq(sigma1), s22 = sq(sigma2);
  eb.sigma_s = std::sqrt(2.0 * s12 * s22 / (s12 + s22));
  if (std::isinf(sigma_p)) {
    eb.sigma_f = std::sqrt((s12 + s22) / 2.0);
  } else {
    eb.sigma_f = std::sqrt((sq(sigma_p) * (s12 + s22) + 4.0 * s12 * s22) /
                           (2.0 * (sq(sigma_p) + s12 + s22)));
  }
  return eb;
}

double pc_type1(const Type1Params& p) {
  if (!(p.sigma1 > 0.0) || !(p.sigma2 > 0.0))
    throw std::invalid_argument("pc_type1: bandwidths must be positive");
  const double dz = p.delta_z, dw = p.delta_omega;

  if (p.pm.kind == PhaseMatching::Kind::Flat) {
    const double s12 = sq(p.sigma1), s22 = sq(p.sigma2);
    const double vis = 2.0 * p.sigma1 * p.sigma2 / (s12 + s22);
    return 0.5 * (1.0 - vis * std::exp(-(s12 * s22 / (s12 + s22)) * sq(dz) - sq(dw) / (s12 + s22)));
  }
  if (p.sigma1 == p.sigma2) {
    const double s = p.sigma1;
    return 0.5 * (1.0 - std::exp(-0.5 * sq(dz * s)) * std::exp(-0.5 * sq(dw / s)));
  }
  const double sigma_p = p.pm.kind == PhaseMatching::Kind::Delta ? 0.0 : p.pm.sigma_p;
  const EffectiveBandwidths eb = effective_bandwidths(p.sigma1, p.sigma2, sigma_p);
  return 0.5 * (1.0 - (eb.sigma_s / eb.sigma_f) * std::exp(-0.5 * sq(dz * eb.sigma_s)) *
                          std::exp(-0.5 * sq(dw / eb.sigma_f)));
}

MzBeta MzBeta::ratio(double beta) {
  if (!(beta > 0.0)) throw std::invalid_argument("MzBeta::ratio: beta must be positive");
  return {Kind::Ratio, beta};
}

double pc_mz(const MzParams& p) {
  if (p.delta_L < 0.0) throw std::invalid_argument("pc_mz: delta_L must be nonnegative");

  // One formula covers the three routes; only the two exponent fractions differ:
  //   balance term  cos(2 theta) exp(-1/2 (f1 dL^2 + dz^2))
  //   normalization B = 1 + cos(2 theta) exp(-fB dL^2)
  double f1 = 0.0, fB = 0.0;
  switch (p.beta.kind) {
    case MzBeta::Kind::Delta:
      f1 = 0.0;
      fB = 0.5;
      break;
    case MzBeta::Kind::Flat:
      f1 = 1.0;
      fB = 1.0;
      break;
    case MzBeta::Kind::Ratio: {
      const double b2 = sq(p.beta.value);
      f1 = b2 / (2.0 + b2);
      fB = (1.0 + b2) / (2.0 + b2);
      break;
    }
  }
  const double cos2t = std::cos(2.0 * p.theta);
  const double dL = p.delta_L, dz = p.delta_z;
  const double b = 1.0 + cos2t * std::exp(-fB * sq(dL));
  if (b < 1e-12)
    throw std::domain_error("pc_mz: interferometer extinguishes the beam (dark port)");
  const double num = cos2t * std::exp(-0.5 * (f1 * sq(dL) + sq(dz))) +
                     0.5 * std::exp(-0.5 * sq(dL + dz)) + 0.5 * std::exp(-0.5 * sq(dL - dz));
  return 0.5 * (1.0 - num / b);
}

namespace {

double type2_effective_sigma(const Type2Params& p) {
  if (!(p.sigma_alpha > 0.0) || !(p.sigma_beta > 0.0))
    throw std::invalid_argument("type2: bandwidths must be positive");
  if (p.sigma_alpha == p.sigma_beta) return p.sigma_alpha;
  const double sa2 = sq(p.sigma_alpha), sb2 = sq(p.sigma_beta), sp2 = sq(p.sigma_p);
  if (std::isinf(p.sigma_p)) return std::sqrt((sa2 + sb2) / 2.0);
  return std::sqrt((sp2 * sa2 + sp2 * sb2 + 4.0 * sa2 * sb2) / (2.0 * (sp2 + sa2 + sb2)));
}

}  // namespace

double pc_type2_entangled(const Type2Params& p) {
  const double sigma = type2_effective_sigma(p);
  const double beat = (p.omega_beta - p.omega_alpha) * p.delta_z - p.theta;
  return 0.5 * (1.0 - std::cos(beat) * std::exp(-0.5 * sq(p.delta_z * sigma)));
}

Type2IndependentPc pc_type2_independent(const Type2Params& p) {
  if (!(p.sigma_alpha > 0.0) || !(p.sigma_beta > 0.0))
    throw std::invalid_argument("pc_type2_independent: bandwidths must be positive");
  if (std::abs(p.n_alpha + p.n_beta - 1.0) > 1e-9)
    throw std::invalid_argument("pc_type2_independent: mode weights must sum to 1");
  const double dz = p.delta_z;
  const double beat = (p.omega_beta - p.omega_alpha) * dz - p.theta;

  Type2IndependentPc out;
  out.pc_mm_alpha = 0.5 * sq(p.n_alpha) * (1.0 - std::exp(-0.5 * sq(dz * p.sigma_alpha)));
  out.pc_mm_beta = 0.5 * sq(p.n_beta) * (1.0 - std::exp(-0.5 * sq(dz * p.sigma_beta)));
  out.pc_cross = p.n_alpha * p.n_beta *
                 (1.0 - std::cos(beat) *
                            std::exp(-0.25 * sq(dz) * (sq(p.sigma_alpha) + sq(p.sigma_beta))));
  out.pc_total = out.pc_mm_alpha + out.pc_mm_beta + out.pc_cross;
  return out;
}

}  // namespace biphoton::analytic
