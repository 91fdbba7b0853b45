#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "nodalvec/coupled.hpp"
#include "nodalvec/grid_field.hpp"
#include "nodalvec/ground_state.hpp"

namespace nodalvec {

/// 2k points on the circle of radius r in the x3 = 0 plane at angles (j-1) pi/k.
std::vector<Point3> peak_positions(int k, double r);

/// 2k points on the circle of radius rho at the half-step angles (2j-1) pi/(2k).
std::vector<Point3> offset_positions(int k, double rho);

/// S_eps = [(min(m,n) - delta), (min(m,n) + delta)] / (2 sin(pi/2k)) * eps ln(1/eps).
std::pair<double, double> admissible_interval(double eps, int k, double m, double n,
                                              double delta);

/// delta = 0.4 * sigma/(1+sigma) * min(m,n) with sigma = 0.05.
double default_delta(double m, double n);

/// Chord between neighbouring peaks, 2 r sin(pi/2k).
double neighbour_distance(int k, double r);

struct PeakConfiguration {
  int k = 1;
  double r = 0;
  std::optional<double> rho;
  double eps = 0.1;
  std::vector<Point3> x_points;
  std::optional<std::vector<Point3>> y_points;
  std::vector<int> signs;  // (-1)^{j-1}
};

PeakConfiguration make_configuration(int k, double r, double eps,
                                     std::optional<double> rho = std::nullopt);

/// Smallest box holding every peak with `margin` eps of clearance, sampled at h <= eps/res.
GridSpec ansatz_grid(const PeakConfiguration& config, double margin = 10.0,
                     double resolution = 8.0);

/// u = sum_j s_j alpha w(|x - x^j|/eps), v the same with gamma.
GridField build_synchronized(const PeakConfiguration& config, const CoupledParams& params,
                             const RadialProfile& w, const GridSpec& grid,
                             double min_margin = 6.0);

/// u = sum_j s_j U1(|x - x^j|/eps), v = sum_j s_j U2(|x - y^j|/eps).
GridField build_segregated(const PeakConfiguration& config, const RadialProfile& U1,
                           const RadialProfile& U2, const GridSpec& grid,
                           double min_margin = 6.0);

/// Adds amplitude * sum_j s_j profile(|x - p_j|/eps) to `out`.
void add_peaks(std::vector<double>& out, const GridSpec& grid, double eps,
               const RadialProfile& profile, double amplitude, const std::vector<Point3>& points,
               const std::vector<int>& signs);

/// Radial-derivative field sum_j s_j amplitude d/dr [profile(|x - p_j(r)|/eps)] where
/// p_j(r) = r * (unit direction of p_j). This is the translation mode of the ring.
void add_ring_derivative(std::vector<double>& out, const GridSpec& grid, double eps,
                         const RadialProfile& profile, double amplitude,
                         const std::vector<Point3>& points, const std::vector<int>& signs);

}  // namespace nodalvec
