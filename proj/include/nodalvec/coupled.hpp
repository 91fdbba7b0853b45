#pragma once

#include <span>
#include <string_view>

#include "nodalvec/ground_state.hpp"

namespace nodalvec {

enum class Regime { AttractiveSync, RepulsiveSync, LargeBetaSync, SegregatedOnly, Invalid };

std::string_view to_string(Regime regime);

/// Couplings (mu1, mu2, beta) together with the synchronized amplitudes, when they exist.
struct CoupledParams {
  double mu1 = 1;
  double mu2 = 1;
  double beta = 0;
  double alpha = 0;
  double gamma = 0;
  Regime regime = Regime::Invalid;

  bool has_amplitudes() const {
    return regime == Regime::AttractiveSync || regime == Regime::RepulsiveSync ||
           regime == Regime::LargeBetaSync;
  }
  /// mu1 alpha^4/2 + mu2 gamma^4/2 + beta alpha^2 gamma^2, the coefficient of the
  /// neighbour interaction in the synchronized energy.
  double interaction_weight() const;
  /// (mu1 alpha^4 + mu2 gamma^4 + 2 beta alpha^2 gamma^2) / 4.
  double quartic_weight() const;
};

/// Amplitudes alpha^2 = (mu2 - beta)/(mu1 mu2 - beta^2), gamma^2 = (mu1 - beta)/(...)
/// and the regime. beta = 0 is the decoupled end of AttractiveSync.
CoupledParams classify(double mu1, double mu2, double beta);

/// Max over the sampled radii of both equation residuals for (u, v) = (alpha w, gamma w),
/// where w solves the mu = 1 radial equation.
double synchronized_residual(const CoupledParams& params, const RadialProfile& profile,
                             std::span<const double> sample_radii);

}  // namespace nodalvec
