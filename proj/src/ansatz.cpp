#include "nodalvec/ansatz.hpp"

#include <cmath>
#include <numbers>

#include "nodalvec/errors.hpp"

namespace nodalvec {

std::vector<Point3> peak_positions(int k, double r) {
  if (k < 1) throw Error(ErrorCode::InvalidParam, "k must be at least 1");
  std::vector<Point3> pts;
  for (int j = 0; j < 2 * k; ++j) {
    const double t = j * std::numbers::pi / k;
    pts.push_back({r * std::cos(t), r * std::sin(t), 0.0});
  }
  // Snap the exact quarter turns so the k = 1, 2 rings are exact lattice-symmetric.
  for (auto& p : pts)
    for (double& c : p)
      if (std::abs(c) < 1e-15 * r) c = 0.0;
  return pts;
}

std::vector<Point3> offset_positions(int k, double rho) {
  if (k < 1) throw Error(ErrorCode::InvalidParam, "k must be at least 1");
  std::vector<Point3> pts;
  for (int j = 1; j <= 2 * k; ++j) {
    const double t = (2 * j - 1) * std::numbers::pi / (2 * k);
    pts.push_back({rho * std::cos(t), rho * std::sin(t), 0.0});
  }
  for (auto& p : pts)
    for (double& c : p)
      if (std::abs(c) < 1e-15 * rho) c = 0.0;
  return pts;
}

double neighbour_distance(int k, double r) {
  return 2 * r * std::sin(std::numbers::pi / (2 * k));
}

std::pair<double, double> admissible_interval(double eps, int k, double m, double n,
                                              double delta) {
  if (!(eps > 0) || !(eps < 1)) throw Error(ErrorCode::InvalidParam, "eps must lie in (0, 1)");
  if (k < 1) throw Error(ErrorCode::InvalidParam, "k must be at least 1");
  const double mn = std::min(m, n);
  if (!(delta > 0) || !(delta < mn))
    throw Error(ErrorCode::InvalidParam, "delta must lie in (0, min(m, n))");
  const double scale = eps * std::log(1 / eps) / (2 * std::sin(std::numbers::pi / (2 * k)));
  return {(mn - delta) * scale, (mn + delta) * scale};
}

double default_delta(double m, double n) {
  constexpr double sigma = 0.05;
  return 0.4 * sigma / (1 + sigma) * std::min(m, n);
}

PeakConfiguration make_configuration(int k, double r, double eps, std::optional<double> rho) {
  if (!(r > 0) || !(eps > 0)) throw Error(ErrorCode::InvalidParam, "r and eps must be positive");
  if (rho && !(*rho > 0)) throw Error(ErrorCode::InvalidParam, "rho must be positive");
  PeakConfiguration c;
  c.k = k;
  c.r = r;
  c.rho = rho;
  c.eps = eps;
  c.x_points = peak_positions(k, r);
  if (rho) c.y_points = offset_positions(k, *rho);
  for (int j = 0; j < 2 * k; ++j) c.signs.push_back(j % 2 == 0 ? 1 : -1);
  return c;
}

namespace {

double max_extent(const PeakConfiguration& config) {
  double e = config.r;
  if (config.rho) e = std::max(e, *config.rho);
  return e;
}

void check_margin(const PeakConfiguration& config, const GridSpec& grid, double min_margin) {
  double reach = 0;
  for (const auto& p : config.x_points) reach = std::max({reach, std::abs(p[0]), std::abs(p[1])});
  if (config.y_points)
    for (const auto& p : *config.y_points)
      reach = std::max({reach, std::abs(p[0]), std::abs(p[1])});
  if (grid.half_width - reach < min_margin * config.eps)
    throw Error(ErrorCode::BoxTooSmall, "peaks sit closer than " + std::to_string(min_margin) +
                                            " eps to the box edge");
}

}  // namespace

GridSpec ansatz_grid(const PeakConfiguration& config, double margin, double resolution) {
  return grid_for(max_extent(config) + margin * config.eps, config.eps / resolution);
}

void add_peaks(std::vector<double>& out, const GridSpec& grid, double eps,
               const RadialProfile& profile, double amplitude, const std::vector<Point3>& points,
               const std::vector<int>& signs) {
  const int n = grid.n;
  for (std::size_t p = 0; p < points.size(); ++p) {
    const double s = amplitude * signs[p];
    const Point3& c = points[p];
    for (int i = 0; i < n; ++i) {
      const double dx = grid.coord(i) - c[0];
      for (int j = 0; j < n; ++j) {
        const double dy = grid.coord(j) - c[1];
        const std::size_t row = grid.index(i, j, 0);
        for (int l = 0; l < n; ++l) {
          const double dz = grid.coord(l) - c[2];
          out[row + l] += s * profile.evaluate(std::sqrt(dx * dx + dy * dy + dz * dz) / eps);
        }
      }
    }
  }
}

void add_ring_derivative(std::vector<double>& out, const GridSpec& grid, double eps,
                         const RadialProfile& profile, double amplitude,
                         const std::vector<Point3>& points, const std::vector<int>& signs) {
  const int n = grid.n;
  for (std::size_t p = 0; p < points.size(); ++p) {
    const double s = amplitude * signs[p];
    const Point3& c = points[p];
    const double norm = std::hypot(c[0], c[1], c[2]);
    const Point3 e{c[0] / norm, c[1] / norm, c[2] / norm};
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        for (int l = 0; l < n; ++l) {
          const double dx = grid.coord(i) - c[0], dy = grid.coord(j) - c[1],
                       dz = grid.coord(l) - c[2];
          const double d = std::sqrt(dx * dx + dy * dy + dz * dz);
          if (d == 0) continue;
          const double along = -(dx * e[0] + dy * e[1] + dz * e[2]) / d;
          out[grid.index(i, j, l)] += s * profile.derivative(d / eps) / eps * along;
        }
  }
}

GridField build_synchronized(const PeakConfiguration& config, const CoupledParams& params,
                             const RadialProfile& w, const GridSpec& grid, double min_margin) {
  if (!params.has_amplitudes())
    throw Error(ErrorCode::RegimeMismatch, "synchronized ansatz needs amplitudes");
  check_margin(config, grid, min_margin);
  GridField f(grid, config.eps);
  add_peaks(f.u, grid, config.eps, w, params.alpha, config.x_points, config.signs);
  add_peaks(f.v, grid, config.eps, w, params.gamma, config.x_points, config.signs);
  return f;
}

GridField build_segregated(const PeakConfiguration& config, const RadialProfile& U1,
                           const RadialProfile& U2, const GridSpec& grid, double min_margin) {
  if (!config.y_points)
    throw Error(ErrorCode::InvalidParam, "segregated ansatz needs rho");
  check_margin(config, grid, min_margin);
  GridField f(grid, config.eps);
  add_peaks(f.u, grid, config.eps, U1, 1.0, config.x_points, config.signs);
  add_peaks(f.v, grid, config.eps, U2, 1.0, *config.y_points, config.signs);
  return f;
}

}  // namespace nodalvec
