#include "nodalvec/grid_field.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <istream>
#include <ostream>
#include <string>

#include "nodalvec/errors.hpp"

namespace nodalvec {

GridSpec grid_for(double half_width, double h_max) {
  if (!(half_width > 0) || !(h_max > 0))
    throw Error(ErrorCode::InvalidParam, "grid extent and spacing must be positive");
  int n = static_cast<int>(std::ceil(2 * half_width / h_max)) + 1;
  if (n % 2 == 0) ++n;
  return {half_width, std::max(n, 5)};
}

namespace {

// Lagrange weights for the 4-point stencil at offset t in [0, 1) from node 1.
std::array<double, 4> cubic_weights(double t) {
  return {-t * (t - 1) * (t - 2) / 6, (t + 1) * (t - 1) * (t - 2) / 2,
          -(t + 1) * t * (t - 2) / 2, (t + 1) * t * (t - 1) / 6};
}

}  // namespace

double GridField::interpolate(int c, const Point3& x) const {
  const double h = grid.spacing();
  const double L = grid.half_width;
  const int n = grid.n;
  std::array<int, 3> base{};
  std::array<std::array<double, 4>, 3> w{};
  for (int d = 0; d < 3; ++d) {
    const double s = (x[d] + L) / h;
    if (s < -1e-9 || s > n - 1 + 1e-9) return 0.0;
    int i = static_cast<int>(std::floor(s));
    i = std::clamp(i - 1, 0, n - 4);
    base[d] = i;
    w[d] = cubic_weights(s - i - 1);
  }
  const auto& f = component(c);
  double acc = 0;
  for (int a = 0; a < 4; ++a) {
    double acc_b = 0;
    for (int b = 0; b < 4; ++b) {
      const std::size_t row = grid.index(base[0] + a, base[1] + b, base[2]);
      double acc_c = 0;
      for (int l = 0; l < 4; ++l) acc_c += w[2][l] * f[row + l];
      acc_b += w[1][b] * acc_c;
    }
    acc += w[0][a] * acc_b;
  }
  return acc;
}

double GridField::boundary_max() const {
  const int n = grid.n;
  double m = 0;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int l = 0; l < n; ++l) {
        if (i != 0 && i != n - 1 && j != 0 && j != n - 1 && l != 0 && l != n - 1) continue;
        const std::size_t id = grid.index(i, j, l);
        m = std::max({m, std::abs(u[id]), std::abs(v[id])});
      }
  return m;
}

void GridField::dump(std::ostream& os) const {
  char buf[96];
  std::snprintf(buf, sizeof buf, "# nodalvec-field v1 L=%.17g n=%d eps=%.17g\n", grid.half_width,
                grid.n, eps);
  os << buf;
  for (std::size_t i = 0; i < u.size(); ++i) {
    std::snprintf(buf, sizeof buf, "%.17g %.17g\n", u[i], v[i]);
    os << buf;
  }
}

GridField GridField::load(std::istream& is) {
  std::string header;
  if (!std::getline(is, header)) throw Error(ErrorCode::Io, "empty field stream");
  double L = 0, eps = 0;
  int n = 0;
  if (std::sscanf(header.c_str(), "# nodalvec-field v1 L=%lf n=%d eps=%lf", &L, &n, &eps) != 3 ||
      n < 5 || n % 2 == 0)
    throw Error(ErrorCode::Io, "unrecognised field header: " + header);
  GridField f({L, n}, eps);
  for (std::size_t i = 0; i < f.u.size(); ++i)
    if (!(is >> f.u[i] >> f.v[i]))
      throw Error(ErrorCode::Io, "truncated field at node " + std::to_string(i));
  return f;
}

void GridField::write_slice_csv(std::ostream& os) const {
  const int n = grid.n;
  const int mid = n / 2;
  char buf[128];
  os << "x1,x2,u,v\n";
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      const std::size_t id = grid.index(i, j, mid);
      std::snprintf(buf, sizeof buf, "%.10g,%.10g,%.12g,%.12g\n", grid.coord(i), grid.coord(j),
                    u[id], v[id]);
      os << buf;
    }
}

}  // namespace nodalvec
