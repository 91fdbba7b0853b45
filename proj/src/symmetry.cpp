#include "nodalvec/symmetry.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "nodalvec/errors.hpp"

namespace nodalvec {

double SymmetryDefect::max() const {
  return std::max({rotation_u, even_x2_u, even_x3_u, rotation_v, even_x2_v, even_x3_v});
}

namespace {

// Planar rotation by `angle` followed by optional reflections of x2 (before rotating) and x3.
struct Transform {
  double c, s;
  bool flip_x2;
  bool flip_x3;
  int character;

  Point3 apply(const Point3& x) const {
    const double y2 = flip_x2 ? -x[1] : x[1];
    return {c * x[0] - s * y2, s * x[0] + c * y2, flip_x3 ? -x[2] : x[2]};
  }
};

// Rotations by multiples of pi/2 map the centred grid onto itself.
bool lattice_angle(int quarter_turns_times_k, int k) { return (2 * quarter_turns_times_k) % k == 0; }

// Samples f at T x for every node, writing into out (accumulating with weight).
void accumulate(const std::vector<double>& f, const GridSpec& grid, const GridField* holder,
                int comp, const Transform& t, int j, int k, double weight,
                std::vector<double>& out) {
  const int n = grid.n;
  const bool exact = lattice_angle(j, k);
  if (exact) {
    const int ic = static_cast<int>(std::lround(t.c)), is = static_cast<int>(std::lround(t.s));
    const int m = n / 2;
    for (int i = 0; i < n; ++i)
      for (int jj = 0; jj < n; ++jj) {
        const int a = i - m, b0 = jj - m;
        const int b = t.flip_x2 ? -b0 : b0;
        const int ti = ic * a - is * b + m, tj = is * a + ic * b + m;
        for (int l = 0; l < n; ++l) {
          const int tl = t.flip_x3 ? n - 1 - l : l;
          out[grid.index(i, jj, l)] += weight * t.character * f[grid.index(ti, tj, tl)];
        }
      }
    return;
  }
  for (int i = 0; i < n; ++i)
    for (int jj = 0; jj < n; ++jj)
      for (int l = 0; l < n; ++l) {
        const Point3 x{grid.coord(i), grid.coord(jj), grid.coord(l)};
        out[grid.index(i, jj, l)] +=
            weight * t.character * holder->interpolate(comp, t.apply(x));
      }
}

void project(std::vector<double>& f, const GridSpec& grid, int k, int parity_x2) {
  GridField holder(grid, 1.0);
  holder.u = f;
  std::vector<double> out(f.size(), 0.0);
  const double weight = 1.0 / (8.0 * k);
  for (int j = 0; j < 2 * k; ++j) {
    const double angle = j * std::numbers::pi / k;
    double c = std::cos(angle), s = std::sin(angle);
    if (lattice_angle(j, k)) {
      c = std::round(c);
      s = std::round(s);
    }
    for (int r2 = 0; r2 < 2; ++r2)
      for (int r3 = 0; r3 < 2; ++r3) {
        const int chi = (j % 2 == 0 ? 1 : -1) * (r2 ? parity_x2 : 1);
        accumulate(holder.u, grid, &holder, 0, {c, s, r2 == 1, r3 == 1, chi}, j, k, weight, out);
      }
  }
  f.swap(out);
}

}  // namespace

void symmetrize_component(std::vector<double>& f, const GridSpec& grid, int k, int parity_x2) {
  if (k < 1) throw Error(ErrorCode::UnsupportedSymmetry, "k must be at least 1");
  if (parity_x2 != 1 && parity_x2 != -1)
    throw Error(ErrorCode::UnsupportedSymmetry, "x2 parity must be +1 or -1");
  project(f, grid, k, parity_x2);
}

void symmetrize(GridField& field, const SymmetryClass& cls) {
  symmetrize_component(field.u, field.grid, cls.k, cls.parity_x2_u);
  symmetrize_component(field.v, field.grid, cls.k, cls.parity_x2_v);
}

namespace {

void component_defect(const GridField& field, int comp, int k, int parity_x2, double& rot,
                      double& ev2, double& ev3) {
  const GridSpec& g = field.grid;
  const auto& f = field.component(comp);
  const int n = g.n;
  const double angle = std::numbers::pi / k;
  const double c = std::cos(angle), s = std::sin(angle);
  const bool exact = lattice_angle(1, k);
  const double L = g.half_width * (1 + 1e-12);
  rot = ev2 = ev3 = 0;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int l = 0; l < n; ++l) {
        const std::size_t id = g.index(i, j, l);
        ev2 = std::max(ev2, std::abs(f[g.index(i, n - 1 - j, l)] - parity_x2 * f[id]));
        ev3 = std::max(ev3, std::abs(f[g.index(i, j, n - 1 - l)] - f[id]));
        double rotated;
        if (exact) {
          const int m = n / 2, a = i - m, b = j - m;
          const int ic = static_cast<int>(std::lround(c)), is = static_cast<int>(std::lround(s));
          rotated = f[g.index(ic * a - is * b + m, is * a + ic * b + m, l)];
        } else {
          const double x = g.coord(i), y = g.coord(j);
          const Point3 p{c * x - s * y, s * x + c * y, g.coord(l)};
          if (std::abs(p[0]) > L || std::abs(p[1]) > L) continue;
          rotated = field.interpolate(comp, p);
        }
        rot = std::max(rot, std::abs(rotated + f[id]));
      }
}

}  // namespace

SymmetryDefect symmetry_defect(const GridField& field, const SymmetryClass& cls) {
  if (cls.k < 1) throw Error(ErrorCode::UnsupportedSymmetry, "k must be at least 1");
  SymmetryDefect d;
  component_defect(field, 0, cls.k, cls.parity_x2_u, d.rotation_u, d.even_x2_u, d.even_x3_u);
  component_defect(field, 1, cls.k, cls.parity_x2_v, d.rotation_v, d.even_x2_v, d.even_x3_v);
  return d;
}

}  // namespace nodalvec
