#include "nodalvec/fast_helmholtz.hpp"

#include <algorithm>
#include <cmath>
#include <mutex>
#include <numbers>

#include <fftw3.h>

#include "nodalvec/errors.hpp"

namespace nodalvec {

void laplacian7(const GridSpec& g, const double* in, double* out) {
  const int n = g.n;
  const double c = 1.0 / (g.spacing() * g.spacing());
  const std::size_t sx = static_cast<std::size_t>(n) * n, sy = n;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      const std::size_t row = g.index(i, j, 0);
      for (int l = 0; l < n; ++l) {
        const std::size_t id = row + l;
        double s = -6.0 * in[id];
        if (i > 0) s += in[id - sx];
        if (i < n - 1) s += in[id + sx];
        if (j > 0) s += in[id - sy];
        if (j < n - 1) s += in[id + sy];
        if (l > 0) s += in[id - 1];
        if (l < n - 1) s += in[id + 1];
        out[id] = c * s;
      }
    }
}

void laplacian13(const GridSpec& g, const double* in, double* out) {
  const int n = g.n;
  const double c = 1.0 / (12.0 * g.spacing() * g.spacing());
  const std::ptrdiff_t sx = static_cast<std::ptrdiff_t>(n) * n, sy = n;
  auto axis = [&](std::size_t id, int pos, std::ptrdiff_t stride) {
    auto f = [&](int off) {
      const int p = pos + off;
      return p < 0 || p >= n ? 0.0 : in[static_cast<std::ptrdiff_t>(id) + off * stride];
    };
    return -f(-2) + 16 * f(-1) - 30 * f(0) + 16 * f(1) - f(2);
  };
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      const std::size_t row = g.index(i, j, 0);
      for (int l = 0; l < n; ++l) {
        const std::size_t id = row + l;
        out[id] = c * (axis(id, i, sx) + axis(id, j, sy) + axis(id, l, 1));
      }
    }
}

namespace {
std::mutex& planner_mutex() {
  static std::mutex m;
  return m;
}
}  // namespace

struct FastHelmholtz::Plan {
  double* buffer = nullptr;
  fftw_plan plan = nullptr;
};

FastHelmholtz::FastHelmholtz(const GridSpec& grid, double eps, double shift)
    : grid_(grid), plan_(std::make_unique<Plan>()) {
  const int n = grid.n;
  const double h = grid.spacing();
  std::vector<double> lam(n);
  for (int q = 0; q < n; ++q) {
    const double s = std::sin(std::numbers::pi * (q + 1) / (2.0 * (n + 1)));
    lam[q] = 4.0 * s * s / (h * h);
  }
  // Two unnormalised DST-I passes scale by (2(n+1)) per axis.
  const double norm = std::pow(2.0 * (n + 1), 3);
  inv_symbol_.resize(grid.size());
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int l = 0; l < n; ++l) {
        const double sym = eps * eps * (lam[i] + lam[j] + lam[l]) + shift;
        if (!(sym > 0)) throw Error(ErrorCode::InvalidParam, "Helmholtz symbol not positive");
        inv_symbol_[grid.index(i, j, l)] = 1.0 / (sym * norm);
      }
  std::lock_guard lock(planner_mutex());
  plan_->buffer = fftw_alloc_real(grid.size());
  plan_->plan = fftw_plan_r2r_3d(n, n, n, plan_->buffer, plan_->buffer, FFTW_RODFT00, FFTW_RODFT00,
                                 FFTW_RODFT00, FFTW_ESTIMATE);
}

FastHelmholtz::~FastHelmholtz() {
  std::lock_guard lock(planner_mutex());
  if (plan_->plan) fftw_destroy_plan(plan_->plan);
  if (plan_->buffer) fftw_free(plan_->buffer);
}

void FastHelmholtz::solve(const double* in, double* out) {
  double* b = plan_->buffer;
  const std::size_t N = grid_.size();
  std::copy(in, in + N, b);
  fftw_execute(plan_->plan);
  for (std::size_t i = 0; i < N; ++i) b[i] *= inv_symbol_[i];
  fftw_execute(plan_->plan);
  std::copy(b, b + N, out);
}

}  // namespace nodalvec
