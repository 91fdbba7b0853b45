#pragma once

#include <functional>
#include <utility>
#include <vector>

namespace nodalvec {

enum class ReducedMode { Synchronized, SegregatedR, SegregatedRho };

/// f(r) = aB r^m + bC0 r^n + C e^{-2 r sin(pi/2k)/eps}. The segregated factors use the
/// same shape with one of the power terms set to zero.
struct ReducedModel {
  double aB = 1;
  double bC0 = 0;
  double C_int = 1;
  double m = 2;
  double n = 2;
  int k = 1;
  double eps = 0.01;
  ReducedMode mode = ReducedMode::Synchronized;

  double value(double r) const;
  double derivative(double r) const;
  double second_derivative(double r) const;
};

/// m / (2 sin(pi/2k)) eps ln(1/eps).
double predicted_radius(double eps, int k, double m);

struct ModelMinimum {
  double r_star;
  double f_star;
  bool interior;
};

/// Dense scan, golden section on the bracketing cell, then safeguarded Newton on f'.
/// Throws NoInteriorMin when the minimiser sits on an end of the interval.
ModelMinimum minimize_model(const ReducedModel& model, std::pair<double, double> interval);

/// Golden-section/Newton tolerance used to decide whether a minimiser is interior.
double search_tolerance(std::pair<double, double> interval);

struct SegregatedMinimum {
  double r1;
  double rho1;
  double value;
  bool interior;
  double cross_term;      // cross_coefficient e^{-2|x^1 - y^1|/eps} at the minimiser
  double retained_exp;    // C_R e^{-2 r1 s/eps} + C_rho e^{-2 rho1 s/eps}
  double cross_ratio;     // cross_term / retained_exp
};

SegregatedMinimum minimize_segregated(const ReducedModel& model_r, const ReducedModel& model_rho,
                                      std::pair<double, double> box_r,
                                      std::pair<double, double> box_rho,
                                      double cross_coefficient = 1.0);

struct LandscapeRow {
  double r;
  double measured;
};

struct Landscape {
  std::vector<LandscapeRow> rows;
  std::size_t argmin;  // first index attaining the minimum
  double r_min;
  double predicted;
  double ratio;  // r_min / predicted
};

/// Evaluates `measure(r)` at every sample (independently, on up to `workers` threads) and
/// locates the discrete minimiser; ties go to the smallest radius.
Landscape measured_landscape(double eps, int k, double m, const std::vector<double>& r_samples,
                             const std::function<double(double)>& measure, int workers = 1);

}  // namespace nodalvec
