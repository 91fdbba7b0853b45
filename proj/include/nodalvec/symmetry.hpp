#pragma once

#include "nodalvec/grid_field.hpp"

namespace nodalvec {

/// Per-component symmetry: both components change sign under rotation by pi/k about x3
/// and are even in x3; the x2 parity is +1 for u and for synchronized v, -1 for the
/// segregated v whose peaks sit at half-step angles.
struct SymmetryClass {
  int k = 1;
  int parity_x2_u = 1;
  int parity_x2_v = 1;

  static SymmetryClass synchronized(int k) { return {k, 1, 1}; }
  static SymmetryClass segregated(int k) { return {k, 1, -1}; }
};

struct SymmetryDefect {
  double rotation_u = 0, even_x2_u = 0, even_x3_u = 0;
  double rotation_v = 0, even_x2_v = 0, even_x3_v = 0;
  double max() const;
};

/// Max over nodes of |f(R x) + f(x)| and |f(S_h x) - p_h f(x)|; rotated samples that
/// are not grid nodes are interpolated, and samples leaving the box are skipped.
SymmetryDefect symmetry_defect(const GridField& field, const SymmetryClass& cls);

/// Replaces both components by their average over the symmetry group (order 8k) with the
/// class character. Exact projection for k = 1, 2; interpolated rotations otherwise.
void symmetrize(GridField& field, const SymmetryClass& cls);

/// Same projection for a single component array with the given x2 parity.
void symmetrize_component(std::vector<double>& f, const GridSpec& grid, int k, int parity_x2);

}  // namespace nodalvec
