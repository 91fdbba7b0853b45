#pragma once

#include <iosfwd>
#include <span>
#include <vector>

namespace nodalvec {

struct GroundStateOptions {
  double ode_tol = 1e-8;
  double tail_tol = 1e-3;
  // The shooting trajectory is replaced by the exact linear tail c0 e^{-r}/r
  // once u drops below tail_switch * u(0); beyond that point u^3 is far below
  // ode_tol and the growing mode picked up from finite precision dominates.
  double tail_switch = 1e-4;
};

/// Positive radial solution of -u'' - (2/r) u' + u = mu u^3 on a uniform grid
/// over [0, r_max], plus the far-field model c0 e^{-r}/r.
///
/// Immutable after construction; safe to share between threads.
class RadialProfile {
 public:
  RadialProfile(double mu, std::vector<double> values, std::vector<double> derivs, double r_max,
                double c0);

  double mu() const { return mu_; }
  double c0() const { return c0_; }
  double r_max() const { return r_max_; }
  double spacing() const { return h_; }
  std::size_t size() const { return values_.size(); }
  double radius(std::size_t i) const { return static_cast<double>(i) * h_; }
  double center_value() const { return values_.front(); }

  std::span<const double> values() const { return values_; }
  std::span<const double> derivs() const { return derivs_; }
  std::vector<double> radii() const;

  /// Cubic Hermite interpolation on the grid, tail model beyond r_max.
  double evaluate(double r) const;
  double derivative(double r) const;
  /// Evaluates value and derivative in one lookup.
  void evaluate(double r, double& value, double& deriv) const;

  /// Text format: one header line, then "r u u'" triples.
  void save(std::ostream& os) const;
  static RadialProfile load(std::istream& is);

 private:
  double mu_;
  std::vector<double> values_;
  std::vector<double> derivs_;
  double r_max_;
  double h_;
  double c0_;
};

/// Shooting on u(0) with bisection between trajectories that cross zero and
/// trajectories that turn back up.
RadialProfile solve_ground_state(double mu, double r_max = 25.0, int nodes = 8000,
                                 const GroundStateOptions& options = {});

struct DecayFit {
  double c0;
  double residual;  // RMS of log(u) + r + log(r) - log(c0) over the fit window
};

/// Least-squares estimate of lim r e^r u(r) over r in [0.6, 0.9] r_max.
DecayFit decay_constant(const RadialProfile& profile, double tail_tol = 1e-3);

/// Max over interior nodes of |u'' + (2/r) u' - u + mu u^3|, with u'' taken
/// as the sixth-order centred difference of the stored derivative.
double ode_residual_max(const RadialProfile& profile);

/// Laplacian u'' + 2u'/r at the grid node nearest r (sixth-order stencil on the stored
/// derivative). Beyond the grid the tail c0 e^{-r}/r is an exact eigenfunction, so the
/// Laplacian equals the value there.
double radial_laplacian(const RadialProfile& profile, double r);

/// Stored value at the grid node nearest r, the tail model beyond the stencil's reach.
/// Pairs with radial_laplacian so value and Laplacian refer to the same point.
double value_at_nearest_node(const RadialProfile& profile, double r);

/// Residual of the radial equation at the grid node nearest r (exact tail beyond it).
double ode_residual_at(const RadialProfile& profile, double r);

}  // namespace nodalvec
