#pragma once

#include <memory>
#include <vector>

#include "nodalvec/grid_field.hpp"

namespace nodalvec {

/// 7-point Laplacian on the box with zero values outside it.
void laplacian7(const GridSpec& grid, const double* in, double* out);

/// 13-point fourth-order Laplacian with zero values outside the box.
void laplacian13(const GridSpec& grid, const double* in, double* out);

/// Exact inverse of (-eps^2 Lap_7 + shift) with zero Dirichlet data, by the type-I sine
/// transform in each direction. Plans are shared-nothing; `solve` is reentrant only for
/// distinct instances.
class FastHelmholtz {
 public:
  FastHelmholtz(const GridSpec& grid, double eps, double shift = 1.0);
  ~FastHelmholtz();
  FastHelmholtz(const FastHelmholtz&) = delete;
  FastHelmholtz& operator=(const FastHelmholtz&) = delete;

  void solve(const double* in, double* out);
  const GridSpec& grid() const { return grid_; }

 private:
  struct Plan;
  GridSpec grid_;
  std::vector<double> inv_symbol_;
  std::unique_ptr<Plan> plan_;
};

}  // namespace nodalvec
