#include "nodalvec/krylov.hpp"

#include <algorithm>
#include <cmath>

#include "nodalvec/energy.hpp"

namespace nodalvec {

double dot(const Vec& a, const Vec& b) {
  // Blocked partial sums keep the reduction order fixed and the error near pairwise.
  constexpr std::size_t kBlock = 1024;
  std::vector<double> partial((a.size() + kBlock - 1) / kBlock);
  for (std::size_t blk = 0; blk < partial.size(); ++blk) {
    double s = 0;
    const std::size_t end = std::min(a.size(), (blk + 1) * kBlock);
    for (std::size_t i = blk * kBlock; i < end; ++i) s += a[i] * b[i];
    partial[blk] = s;
  }
  return pairwise_sum(partial.data(), partial.size());
}

double norm2(const Vec& a) { return std::sqrt(dot(a, a)); }

double norm_inf(const Vec& a) {
  double m = 0;
  for (double x : a) m = std::max(m, std::abs(x));
  return m;
}

namespace {
void axpy(double alpha, const Vec& x, Vec& y) {
  for (std::size_t i = 0; i < y.size(); ++i) y[i] += alpha * x[i];
}
}  // namespace

KrylovResult gmres(const LinearOp& A, const LinearOp& M_inv, const Vec& b, Vec& x, double rtol,
                   int restart, int max_iterations) {
  const std::size_t N = b.size();
  KrylovResult res;
  const double bnorm = norm2(b);
  if (bnorm == 0) {
    std::fill(x.begin(), x.end(), 0.0);
    res.converged = true;
    res.relative_residual = 0;
    return res;
  }
  Vec r(N), w(N), z(N);
  std::vector<Vec> V;
  std::vector<std::vector<double>> H;
  while (res.iterations < max_iterations) {
    A(x, w);
    for (std::size_t i = 0; i < N; ++i) r[i] = b[i] - w[i];
    double beta = norm2(r);
    res.relative_residual = beta / bnorm;
    if (res.relative_residual <= rtol) {
      res.converged = true;
      return res;
    }
    const int m = std::min(restart, max_iterations - res.iterations);
    V.assign(1, r);
    for (double& v : V[0]) v /= beta;
    H.assign(m + 1, std::vector<double>(m, 0.0));
    std::vector<double> cs(m), sn(m), g(m + 1, 0.0);
    g[0] = beta;
    int j = 0;
    for (; j < m; ++j) {
      M_inv(V[j], z);
      A(z, w);
      ++res.iterations;
      for (int i = 0; i <= j; ++i) {
        H[i][j] = dot(w, V[i]);
        axpy(-H[i][j], V[i], w);
      }
      // One reorthogonalisation pass keeps the basis clean at long restarts.
      for (int i = 0; i <= j; ++i) {
        const double c = dot(w, V[i]);
        H[i][j] += c;
        axpy(-c, V[i], w);
      }
      H[j + 1][j] = norm2(w);
      for (int i = 0; i < j; ++i) {
        const double t = cs[i] * H[i][j] + sn[i] * H[i + 1][j];
        H[i + 1][j] = -sn[i] * H[i][j] + cs[i] * H[i + 1][j];
        H[i][j] = t;
      }
      const double d = std::hypot(H[j][j], H[j + 1][j]);
      cs[j] = d == 0 ? 1.0 : H[j][j] / d;
      sn[j] = d == 0 ? 0.0 : H[j + 1][j] / d;
      const double hjj1 = H[j + 1][j];
      H[j][j] = d;
      H[j + 1][j] = 0;
      g[j + 1] = -sn[j] * g[j];
      g[j] = cs[j] * g[j];
      res.relative_residual = std::abs(g[j + 1]) / bnorm;
      if (res.relative_residual <= rtol || hjj1 == 0) {
        ++j;
        break;
      }
      V.emplace_back(w);
      for (double& v : V.back()) v /= hjj1;
    }
    // Back substitution for the Krylov coefficients, then x += M^{-1} V y.
    std::vector<double> y(j, 0.0);
    for (int i = j - 1; i >= 0; --i) {
      double s = g[i];
      for (int k = i + 1; k < j; ++k) s -= H[i][k] * y[k];
      y[i] = s / H[i][i];
    }
    std::fill(w.begin(), w.end(), 0.0);
    for (int i = 0; i < j; ++i) axpy(y[i], V[i], w);
    M_inv(w, z);
    axpy(1.0, z, x);
    if (res.relative_residual <= rtol) {
      res.converged = true;
      return res;
    }
  }
  return res;
}

KrylovResult conjugate_gradient(const LinearOp& A, const LinearOp& M_inv, const Vec& b, Vec& x,
                                double rtol, int max_iterations) {
  const std::size_t N = b.size();
  KrylovResult res;
  const double bnorm = norm2(b);
  if (bnorm == 0) {
    std::fill(x.begin(), x.end(), 0.0);
    res.converged = true;
    res.relative_residual = 0;
    return res;
  }
  Vec r(N), z(N), p(N), q(N);
  A(x, q);
  for (std::size_t i = 0; i < N; ++i) r[i] = b[i] - q[i];
  M_inv(r, z);
  p = z;
  double rz = dot(r, z);
  while (true) {
    res.relative_residual = norm2(r) / bnorm;
    if (res.relative_residual <= rtol) {
      res.converged = true;
      return res;
    }
    if (res.iterations >= max_iterations) return res;
    A(p, q);
    const double alpha = rz / dot(p, q);
    axpy(alpha, p, x);
    axpy(-alpha, q, r);
    M_inv(r, z);
    const double rz_new = dot(r, z);
    const double beta = rz_new / rz;
    rz = rz_new;
    for (std::size_t i = 0; i < N; ++i) p[i] = z[i] + beta * p[i];
    ++res.iterations;
  }
}

}  // namespace nodalvec
