#include "nodalvec/coupled.hpp"

#include <algorithm>
#include <cmath>

#include "nodalvec/errors.hpp"

namespace nodalvec {

std::string_view to_string(Regime regime) {
  switch (regime) {
    case Regime::AttractiveSync: return "AttractiveSync";
    case Regime::RepulsiveSync: return "RepulsiveSync";
    case Regime::LargeBetaSync: return "LargeBetaSync";
    case Regime::SegregatedOnly: return "SegregatedOnly";
    case Regime::Invalid: return "Invalid";
  }
  return "Invalid";
}

double CoupledParams::interaction_weight() const {
  const double a2 = alpha * alpha, g2 = gamma * gamma;
  return 0.5 * mu1 * a2 * a2 + 0.5 * mu2 * g2 * g2 + beta * a2 * g2;
}

double CoupledParams::quartic_weight() const {
  const double a2 = alpha * alpha, g2 = gamma * gamma;
  return 0.25 * (mu1 * a2 * a2 + mu2 * g2 * g2 + 2 * beta * a2 * g2);
}

CoupledParams classify(double mu1, double mu2, double beta) {
  if (!(mu1 > 0) || !(mu2 > 0)) throw Error(ErrorCode::InvalidParam, "mu1, mu2 must be positive");
  if (!std::isfinite(beta)) throw Error(ErrorCode::InvalidParam, "beta must be finite");
  CoupledParams p;
  p.mu1 = mu1;
  p.mu2 = mu2;
  p.beta = beta;
  const double det = mu1 * mu2 - beta * beta;
  if (std::abs(det) <= 1e-14 * mu1 * mu2)
    throw Error(ErrorCode::SingularBeta, "beta^2 equals mu1*mu2");
  const double a2 = (mu2 - beta) / det;
  const double g2 = (mu1 - beta) / det;
  if (a2 > 0 && g2 > 0) {
    p.alpha = std::sqrt(a2);
    p.gamma = std::sqrt(g2);
    if (beta > std::max(mu1, mu2))
      p.regime = Regime::LargeBetaSync;
    else if (beta < 0)
      p.regime = Regime::RepulsiveSync;
    else
      p.regime = Regime::AttractiveSync;
  } else {
    p.regime = beta < 0 ? Regime::SegregatedOnly : Regime::Invalid;
  }
  return p;
}

double synchronized_residual(const CoupledParams& params, const RadialProfile& profile,
                             std::span<const double> sample_radii) {
  if (!params.has_amplitudes())
    throw Error(ErrorCode::RegimeMismatch,
                "regime " + std::string(to_string(params.regime)) + " has no amplitudes");
  const double a = params.alpha, g = params.gamma;
  double worst = 0;
  for (double r : sample_radii) {
    const double lap = radial_laplacian(profile, r);
    const double w = value_at_nearest_node(profile, r);
    const double u = a * w, v = g * w;
    const double ru = -a * lap + u - params.mu1 * u * u * u - params.beta * v * v * u;
    const double rv = -g * lap + v - params.mu2 * v * v * v - params.beta * u * u * v;
    worst = std::max({worst, std::abs(ru), std::abs(rv)});
  }
  return worst;
}

}  // namespace nodalvec
