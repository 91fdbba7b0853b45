#pragma once

#include <array>
#include <cstddef>
#include <iosfwd>
#include <vector>

namespace nodalvec {

using Point3 = std::array<double, 3>;

/// Cubic tensor grid on [-L, L]^3 with n nodes per axis (n odd, so the origin is a node).
struct GridSpec {
  double half_width = 1;
  int n = 33;

  double spacing() const { return 2 * half_width / (n - 1); }
  double coord(int i) const { return -half_width + i * spacing(); }
  std::size_t size() const { return static_cast<std::size_t>(n) * n * n; }
  std::size_t index(int i, int j, int l) const {
    return (static_cast<std::size_t>(i) * n + j) * n + l;
  }
  bool operator==(const GridSpec&) const = default;
};

/// Smallest odd node count whose spacing does not exceed h_max.
GridSpec grid_for(double half_width, double h_max);

/// Two-component field sampled on a GridSpec; u and v are stored x1-major.
struct GridField {
  GridSpec grid;
  double eps = 1;
  std::vector<double> u;
  std::vector<double> v;

  GridField() = default;
  GridField(GridSpec g, double e) : grid(g), eps(e), u(g.size(), 0.0), v(g.size(), 0.0) {}

  std::vector<double>& component(int c) { return c == 0 ? u : v; }
  const std::vector<double>& component(int c) const { return c == 0 ? u : v; }

  /// Tricubic Lagrange interpolation of one component; zero outside the box.
  double interpolate(int c, const Point3& x) const;

  /// Largest |value| over the six faces of the box, both components.
  double boundary_max() const;

  /// Text dump: header with L, n, eps, then one "u v" pair per node.
  void dump(std::ostream& os) const;
  static GridField load(std::istream& is);

  /// CSV of the x3 = 0 plane: x1,x2,u,v.
  void write_slice_csv(std::ostream& os) const;
};

}  // namespace nodalvec
