#pragma once

#include <functional>
#include <vector>

namespace nodalvec {

using Vec = std::vector<double>;
using LinearOp = std::function<void(const Vec&, Vec&)>;

struct KrylovResult {
  bool converged = false;
  int iterations = 0;
  double relative_residual = 1;
};

double dot(const Vec& a, const Vec& b);
double norm2(const Vec& a);
double norm_inf(const Vec& a);

/// Restarted GMRES with right preconditioning; x holds the initial guess on entry.
KrylovResult gmres(const LinearOp& A, const LinearOp& M_inv, const Vec& b, Vec& x, double rtol,
                   int restart, int max_iterations);

/// Preconditioned conjugate gradients for symmetric positive definite A.
KrylovResult conjugate_gradient(const LinearOp& A, const LinearOp& M_inv, const Vec& b, Vec& x,
                                double rtol, int max_iterations);

}  // namespace nodalvec
