#pragma once

#include <cmath>
#include <iosfwd>
#include <limits>
#include <vector>

#include "nodalvec/coupled.hpp"
#include "nodalvec/grid_field.hpp"
#include "nodalvec/ground_state.hpp"

namespace nodalvec {

/// Radial trap K(x) = 1 + a|x|^m + c_hot |x|^(m + theta).
struct PotentialModel {
  double a = 0;
  double m = 2;
  double c_hot = 0;
  double theta = 1;

  double operator()(double radius) const {
    double p = 1 + a * std::pow(radius, m);
    if (c_hot != 0) p += c_hot * std::pow(radius, m + theta);
    return p;
  }
  /// Throws InvalidParam unless K stays positive on [0, box_radius].
  void check_positive(double box_radius) const;
};

struct Moments {
  double int_w2 = 0;        // integral of w^2
  double int_w4 = 0;        // integral of w^4
  double int_w3_exp = 0;    // integral of w^3(x) e^{-x1}
  double int_grad2 = 0;     // integral of |grad w|^2
  double int_r2_w2 = 0;     // integral of |x|^2 w^2
};

/// Radial quadrature (fourth-order corrected trapezoid) plus the analytic tail.
Moments moments(const RadialProfile& profile);

struct EnergyBreakdown {
  double total = 0;
  double kinetic_u = 0, kinetic_v = 0;      // eps^2 int |grad|^2
  double potential_u = 0, potential_v = 0;  // int K f^2
  double quartic_u = 0, quartic_v = 0;      // mu_i int f^4
  double coupling = 0;                      // int u^2 v^2
  double predicted_total = std::numeric_limits<double>::quiet_NaN();
  double eps = 0;
  double r = std::numeric_limits<double>::quiet_NaN();
  double rho = std::numeric_limits<double>::quiet_NaN();
};

/// Tensor-grid quadrature of the energy functional with fourth-order centred gradients
/// (zero outside the box) and pairwise summation.
EnergyBreakdown energy(const GridField& field, double eps, const PotentialModel& P,
                       const PotentialModel& Q, const CoupledParams& params);

/// Energy of one synchronized peak (alpha w, gamma w) centred at distance r from the
/// origin, by spherical quadrature around the peak. Exact up to quadrature error.
double single_peak_energy(double eps, double r, const PotentialModel& P,
                          const PotentialModel& Q, const CoupledParams& params,
                          const RadialProfile& w);

/// Energy of one scalar peak U centred at distance r in the trap K, with cubic
/// coefficient mu (U solves the mu equation).
double single_species_peak_energy(double eps, double r, const PotentialModel& K, double mu,
                                  const RadialProfile& U);

/// eps^3 (A + aB r^m + b C0 r^n) with B = alpha^2 int w^2 / 2, C0 = gamma^2 int w^2 / 2.
double single_peak_prediction(double eps, double r, const PotentialModel& P,
                              const PotentialModel& Q, const CoupledParams& params,
                              const Moments& mom);

struct ExpansionCoefficients {
  double A, B, C0;
};
ExpansionCoefficients sync_coefficients(const CoupledParams& params, const Moments& mom);

struct PairInteraction {
  double value;             // int w^3_{p,eps} w_{q,eps}
  double c_hat;             // value / (eps^3 e^{-d/eps})
  double c_hat_algebraic;   // c_hat * d/eps, the constant once the 1/D prefactor is removed
};

/// Two-centre quadrature in spherical coordinates about each centre, split at the
/// bisecting plane. d = 0 gives eps^3 int w^4.
PairInteraction pair_interaction(const RadialProfile& profile, double d, double eps);

struct CrossInteraction {
  double value;             // int U1^2_{p,eps} U2^2_{q,eps}
  double normalized_ratio;  // value / (eps^3 e^{-2 d/eps})
};

CrossInteraction cross_species_interaction(const RadialProfile& U1, const RadialProfile& U2,
                                           double d, double eps);

/// Number of nearest neighbours of a peak on the ring: 1 for k = 1, 2 otherwise.
int neighbour_count(int k);

/// Coefficient C of the synchronized interaction term, n_nb * c_hat at the chord.
double sync_interaction_coefficient(int k, double c_hat);

/// Coefficient B_i of a segregated species with profile w / sqrt(mu_i): n_nb c_hat/(2 mu_i).
double seg_interaction_coefficient(int k, double c_hat, double mu);

/// 2k eps^3 [A + aB r^m + b C0 r^n + C (mu1 a^4/2 + mu2 g^4/2 + beta a^2 g^2) e^{-2r sin(pi/2k)/eps}].
double multipeak_prediction_sync(double eps, double r, int k, const PotentialModel& P,
                                 const PotentialModel& Q, const CoupledParams& params,
                                 const Moments& mom, double C);

struct SegregatedPrediction {
  double total;       // retained terms
  double A_tilde, B_tilde, C_tilde;
};

/// 2k eps^3 [A~ + aB~ r^m + bC~ rho^n + B1 e^{-2r sin/eps} + B2 e^{-2 rho sin/eps}],
/// moments of U1 and U2 supplied separately.
SegregatedPrediction multipeak_prediction_seg(double eps, double r, double rho, int k,
                                              const PotentialModel& P, const PotentialModel& Q,
                                              double mu1, double mu2, const Moments& mom1,
                                              const Moments& mom2, double B1, double B2);

/// Distance between x^j and its neighbouring y^j.
double cross_distance(int k, double r, double rho);

struct EnergyRow {
  double eps;
  int k;
  double r;
  double rho;
  double measured;
  double predicted;
  double kinetic, potential, quartic, coupling;
};

void write_energy_csv(std::ostream& os, const std::vector<EnergyRow>& rows);

/// Deterministic pairwise (tree) summation.
double pairwise_sum(const double* x, std::size_t n);

}  // namespace nodalvec
