#include "nodalvec/solver.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <numbers>
#include <random>
#include <tuple>

#include <nlohmann/json.hpp>

#include "nodalvec/errors.hpp"
#include "nodalvec/fast_helmholtz.hpp"
#include "nodalvec/krylov.hpp"

namespace nodalvec {

namespace {

void check_resolution(const GridSpec& g, double eps) {
  if (g.spacing() > eps / 4 * (1 + 1e-12))
    throw Error(ErrorCode::ResolutionTooCoarse, "grid spacing exceeds eps/4");
}

std::vector<double> sample_potential(const GridSpec& g, const PotentialModel& K) {
  std::vector<double> out(g.size());
  const int n = g.n;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int l = 0; l < n; ++l) {
        const double x = g.coord(i), y = g.coord(j), z = g.coord(l);
        out[g.index(i, j, l)] = K(std::sqrt(x * x + y * y + z * z));
      }
  return out;
}

// Stacked (u, v) helpers.
Vec stack(const GridField& f) {
  Vec x(f.u);
  x.insert(x.end(), f.v.begin(), f.v.end());
  return x;
}

void unstack(const Vec& x, GridField& f) {
  const std::size_t N = f.u.size();
  std::copy(x.begin(), x.begin() + N, f.u.begin());
  std::copy(x.begin() + N, x.end(), f.v.begin());
}

double weighted_dot(const GridSpec& g, const Vec& a, const Vec& b) {
  const double h = g.spacing();
  return h * h * h * dot(a, b);
}

// The coupled system on one grid: potentials, Laplacian work space, Helmholtz inverse.
class System {
 public:
  System(const GridSpec& g, double eps, const PotentialModel& P, const PotentialModel& Q,
         const SystemCoefficients& c)
      : g_(g), N_(g.size()), eps_(eps), c_(c), P_(sample_potential(g, P)),
        Q_(sample_potential(g, Q)), helm_(g, eps, 1.0), lap_(N_) {}

  std::size_t size() const { return N_; }
  const GridSpec& grid() const { return g_; }
  const std::vector<double>& P() const { return P_; }
  const std::vector<double>& Q() const { return Q_; }

  void residual(const Vec& x, Vec& out, bool fourth_order = false) {
    out.resize(2 * N_);
    const double e2 = eps_ * eps_;
    for (int comp = 0; comp < 2; ++comp) {
      const double* f = x.data() + comp * N_;
      if (fourth_order)
        laplacian13(g_, f, lap_.data());
      else
        laplacian7(g_, f, lap_.data());
      const auto& K = comp == 0 ? P_ : Q_;
      const double mu = comp == 0 ? c_.mu1 : c_.mu2;
      const double* o = x.data() + (1 - comp) * N_;
      double* r = out.data() + comp * N_;
      for (std::size_t i = 0; i < N_; ++i)
        r[i] = -e2 * lap_[i] + K[i] * f[i] - mu * f[i] * f[i] * f[i] - c_.beta * o[i] * o[i] * f[i];
    }
  }

  void linearize(const Vec& x) {
    juu_.resize(N_);
    jvv_.resize(N_);
    juv_.resize(N_);
    for (std::size_t i = 0; i < N_; ++i) {
      const double u = x[i], v = x[N_ + i];
      juu_[i] = P_[i] - 3 * c_.mu1 * u * u - c_.beta * v * v;
      jvv_[i] = Q_[i] - 3 * c_.mu2 * v * v - c_.beta * u * u;
      juv_[i] = -2 * c_.beta * u * v;
    }
  }

  void apply_jacobian(const Vec& d, Vec& out) {
    out.resize(2 * N_);
    const double e2 = eps_ * eps_;
    for (int comp = 0; comp < 2; ++comp) {
      laplacian7(g_, d.data() + comp * N_, lap_.data());
      const auto& diag = comp == 0 ? juu_ : jvv_;
      const double* f = d.data() + comp * N_;
      const double* o = d.data() + (1 - comp) * N_;
      double* r = out.data() + comp * N_;
      for (std::size_t i = 0; i < N_; ++i) r[i] = -e2 * lap_[i] + diag[i] * f[i] + juv_[i] * o[i];
    }
  }

  // (-eps^2 Lap + K) blockwise, the operator of the eps inner product.
  void apply_metric(const Vec& d, Vec& out) {
    out.resize(2 * N_);
    const double e2 = eps_ * eps_;
    for (int comp = 0; comp < 2; ++comp) {
      laplacian7(g_, d.data() + comp * N_, lap_.data());
      const auto& K = comp == 0 ? P_ : Q_;
      const double* f = d.data() + comp * N_;
      double* r = out.data() + comp * N_;
      for (std::size_t i = 0; i < N_; ++i) r[i] = -e2 * lap_[i] + K[i] * f[i];
    }
  }

  void precondition(const Vec& in, Vec& out) {
    out.resize(2 * N_);
    helm_.solve(in.data(), out.data());
    helm_.solve(in.data() + N_, out.data() + N_);
  }

  // sqrt(<F, A^{-1} F>) with A the metric operator.
  double dual_norm(const Vec& F) {
    Vec z(F.size(), 0.0);
    const KrylovResult kr = conjugate_gradient(
        [&](const Vec& a, Vec& b) { apply_metric(a, b); },
        [&](const Vec& a, Vec& b) { precondition(a, b); }, F, z, 1e-10, 500);
    if (!kr.converged && kr.relative_residual > 1e-6)
      throw Error(ErrorCode::LinearSolveStall, "Riesz solve did not converge");
    return std::sqrt(std::max(0.0, weighted_dot(g_, F, z)));
  }

  double metric_norm2(const Vec& d) {
    Vec t;
    apply_metric(d, t);
    return weighted_dot(g_, d, t);
  }

 private:
  GridSpec g_;
  std::size_t N_;
  double eps_;
  SystemCoefficients c_;
  std::vector<double> P_, Q_;
  FastHelmholtz helm_;
  std::vector<double> lap_;
  std::vector<double> juu_, jvv_, juv_;
};

SymmetryClass class_for(SolveMode mode, int k) {
  return mode == SolveMode::Synchronized ? SymmetryClass::synchronized(k)
                                         : SymmetryClass::segregated(k);
}

void project(Vec& x, const GridSpec& g, const SymmetryClass& cls) {
  const std::size_t N = g.size();
  std::vector<double> part(x.begin(), x.begin() + N);
  symmetrize_component(part, g, cls.k, cls.parity_x2_u);
  std::copy(part.begin(), part.end(), x.begin());
  part.assign(x.begin() + N, x.end());
  symmetrize_component(part, g, cls.k, cls.parity_x2_v);
  std::copy(part.begin(), part.end(), x.begin() + N);
}

double h1_norm(const GridSpec& g, const std::vector<double>& f) {
  std::vector<double> lap(f.size());
  laplacian7(g, f.data(), lap.data());
  double s = 0;
  std::vector<double> prod(f.size());
  for (std::size_t i = 0; i < f.size(); ++i) prod[i] = f[i] * f[i] - f[i] * lap[i];
  s = pairwise_sum(prod.data(), prod.size());
  const double h = g.spacing();
  return std::sqrt(std::max(0.0, s * h * h * h));
}

}  // namespace

GridField residual(const GridField& field, double eps, const PotentialModel& P,
                   const PotentialModel& Q, const SystemCoefficients& c) {
  check_resolution(field.grid, eps);
  System sys(field.grid, eps, P, Q, c);
  Vec F;
  sys.residual(stack(field), F);
  GridField out(field.grid, eps);
  unstack(F, out);
  return out;
}

GridField apply_linearization(const GridField& state, const GridField& direction, double eps,
                              const PotentialModel& P, const PotentialModel& Q,
                              const SystemCoefficients& c) {
  if (!(state.grid == direction.grid))
    throw Error(ErrorCode::GridMismatch, "state and direction live on different grids");
  System sys(state.grid, eps, P, Q, c);
  sys.linearize(stack(state));
  Vec out;
  sys.apply_jacobian(stack(direction), out);
  GridField f(state.grid, eps);
  unstack(out, f);
  return f;
}

namespace {

// In-plane radial derivative of one component, used to pin the ring radius.
Vec ring_direction(const GridField& f, int comp, const SymmetryClass& cls) {
  const GridSpec& g = f.grid;
  const std::size_t N = g.size();
  const int n = g.n;
  const auto& c = f.component(comp);
  const double h2 = 2 * g.spacing();
  std::vector<double> z(N, 0.0);
  for (int i = 1; i + 1 < n; ++i)
    for (int j = 1; j + 1 < n; ++j) {
      const double x = g.coord(i), y = g.coord(j), rho = std::hypot(x, y);
      if (rho == 0) continue;
      for (int l = 1; l + 1 < n; ++l) {
        const double dx = (c[g.index(i + 1, j, l)] - c[g.index(i - 1, j, l)]) / h2;
        const double dy = (c[g.index(i, j + 1, l)] - c[g.index(i, j - 1, l)]) / h2;
        z[g.index(i, j, l)] = (x * dx + y * dy) / rho;
      }
    }
  symmetrize_component(z, g, cls.k, comp == 0 ? cls.parity_x2_u : cls.parity_x2_v);
  const double nz = std::sqrt(dot(z, z));
  Vec out(2 * N, 0.0);
  if (nz == 0) return {};
  for (std::size_t i = 0; i < N; ++i) out[comp * N + i] = z[i] / nz;
  return out;
}

}  // namespace

std::pair<GridField, SolveReport> newton_solve(const GridField& initial, double eps,
                                               const PotentialModel& P, const PotentialModel& Q,
                                               const SystemCoefficients& c,
                                               const NewtonOptions& opt) {
  check_resolution(initial.grid, eps);
  const GridSpec& g = initial.grid;
  const std::size_t N2 = 2 * g.size();
  const SymmetryClass cls = class_for(opt.mode, opt.k);
  System sys(g, eps, P, Q, c);
  SolveReport rep;
  rep.symmetry_defect_initial = symmetry_defect(initial, cls).max();

  Vec x = stack(initial);
  project(x, g, cls);
  const Vec x0 = x;
  GridField current(g, eps);
  auto defect_of = [&](const Vec& state) {
    unstack(state, current);
    return symmetry_defect(current, cls).max();
  };
  rep.max_iterate_defect = defect_of(x);

  // Bordered system in y = (x, lambda): F(x) - sum lambda_i Z_i = 0, <Z_i, x - x0> = t_i.
  // With no Z it is the plain system.
  Vec Fx, tmp;
  auto eval = [&](const std::vector<Vec>& Z, const Vec& t, const Vec& y, Vec& out) {
    const std::size_t m = Z.size();
    Vec xs(y.begin(), y.begin() + N2);
    sys.residual(xs, Fx);
    out.assign(Fx.begin(), Fx.end());
    out.resize(N2 + m);
    for (std::size_t i = 0; i < m; ++i) {
      double s = 0;
      for (std::size_t q = 0; q < N2; ++q) {
        out[q] -= y[N2 + i] * Z[i][q];
        s += Z[i][q] * (y[q] - x0[q]);
      }
      out[N2 + i] = s - t[i];
    }
    return std::pair{norm_inf(out), norm_inf(Fx)};
  };
  auto bordered_solve = [&](const std::vector<Vec>& Z, const Vec& rhs, Vec& sol, double rtol) {
    const std::size_t m = Z.size();
    sol.assign(N2 + m, 0.0);
    const KrylovResult kr = gmres(
        [&](const Vec& a, Vec& b) {
          Vec ax(a.begin(), a.begin() + N2);
          sys.apply_jacobian(ax, tmp);
          b.assign(tmp.begin(), tmp.end());
          b.resize(N2 + m);
          for (std::size_t i = 0; i < m; ++i) {
            double s = 0;
            for (std::size_t q = 0; q < N2; ++q) {
              b[q] -= a[N2 + i] * Z[i][q];
              s += Z[i][q] * a[q];
            }
            b[N2 + i] = s;
          }
        },
        [&](const Vec& a, Vec& b) {
          Vec ax(a.begin(), a.begin() + N2);
          sys.precondition(ax, tmp);
          b.assign(tmp.begin(), tmp.end());
          b.insert(b.end(), a.begin() + N2, a.end());
        },
        rhs, sol, rtol, opt.gmres_restart, opt.gmres_max);
    if (!kr.converged && kr.relative_residual > 0.5)
      throw Error(ErrorCode::LinearSolveStall,
                  "GMRES relative residual " + std::to_string(kr.relative_residual));
    Vec xs(sol.begin(), sol.begin() + N2);
    project(xs, g, cls);
    std::copy(xs.begin(), xs.end(), sol.begin());
    return kr.iterations;
  };
  auto project_y = [&](Vec& y) {
    Vec xs(y.begin(), y.begin() + N2);
    project(xs, g, cls);
    std::copy(xs.begin(), xs.end(), y.begin());
  };

  struct Outcome {
    bool ok;
    int iterations;
    double residual;
  };
  auto newton = [&](const std::vector<Vec>& Z, const Vec& t, Vec& y, int max_iters, double tol,
                    bool record) {
    Vec G, Gnew, delta, trial, rhs;
    double fnorm = eval(Z, t, y, G).first;
    if (record) rep.residual_history.push_back(fnorm);
    int it = 0;
    for (; it < max_iters && fnorm > tol; ++it) {
      sys.linearize(Vec(y.begin(), y.begin() + N2));
      rhs.resize(G.size());
      for (std::size_t i = 0; i < G.size(); ++i) rhs[i] = -G[i];
      const int lin = bordered_solve(Z, rhs, delta, std::clamp(fnorm, 1e-10, 1e-2));
      if (record) rep.linear_iterations.push_back(lin);

      double step = 1.0, trial_norm = 0;
      bool accepted = false;
      for (; step >= opt.min_step; step *= 0.5) {
        trial = y;
        for (std::size_t i = 0; i < y.size(); ++i) trial[i] += step * delta[i];
        project_y(trial);
        trial_norm = eval(Z, t, trial, Gnew).first;
        if (trial_norm <= (1 - 1e-4 * step) * fnorm) {
          accepted = true;
          break;
        }
      }
      if (!accepted) {
        if (record) rep.message = "line search failed at iteration " + std::to_string(it);
        break;
      }
      y.swap(trial);
      G.swap(Gnew);
      fnorm = trial_norm;
      if (record) {
        rep.step_lengths.push_back(step);
        rep.residual_history.push_back(fnorm);
        rep.max_iterate_defect =
            std::max(rep.max_iterate_defect, defect_of(Vec(y.begin(), y.begin() + N2)));
      }
    }
    return Outcome{fnorm <= tol, it, fnorm};
  };

  std::vector<Vec> Z;
  if (opt.ring_warmup)
    for (int comp = 0; comp < 2; ++comp)
      if (Vec z = ring_direction(initial, comp, cls); !z.empty()) Z.push_back(std::move(z));

  if (!Z.empty()) {
    // Hold the ring offsets t fixed and solve for the profile, then move t until the
    // multipliers vanish. The ring mode is nearly degenerate, so a plain Newton step
    // along it overshoots; here every trial offset is re-projected onto the
    // constrained solution set before it is judged.
    const std::size_t m = Z.size();
    Vec t(m, 0.0), y = x, G;
    y.resize(N2 + m, 0.0);
    const Outcome warm = newton(Z, t, y, opt.warmup_iters, opt.warmup_tol, false);
    rep.warmup_iterations = warm.iterations;
    rep.warmup_residual = warm.residual;
    if (warm.ok) {
      double full = eval(Z, t, y, G).second;
      for (int outer = 0; outer < opt.ring_iters && full > opt.tol; ++outer) {
        sys.linearize(Vec(y.begin(), y.begin() + N2));
        std::vector<Vec> S(m);
        for (std::size_t j = 0; j < m; ++j) {
          Vec e(N2 + m, 0.0);
          e[N2 + j] = 1.0;
          bordered_solve(Z, e, S[j], 1e-8);
        }
        // d lambda / d t from the sensitivities, then a Newton step on lambda(t) = 0.
        Vec dt(m);
        if (m == 1) {
          dt[0] = -y[N2] / S[0][N2];
        } else {
          const double a = S[0][N2], b = S[1][N2], c2 = S[0][N2 + 1], d = S[1][N2 + 1];
          const double det = a * d - b * c2;
          dt[0] = -(d * y[N2] - b * y[N2 + 1]) / det;
          dt[1] = -(-c2 * y[N2] + a * y[N2 + 1]) / det;
        }
        if (!std::all_of(dt.begin(), dt.end(), [](double v) { return std::isfinite(v); })) break;
        bool accepted = false;
        for (double step = 1.0; step >= opt.min_step; step *= 0.5) {
          Vec tt = t, yy = y;
          for (std::size_t j = 0; j < m; ++j) {
            tt[j] += step * dt[j];
            for (std::size_t q = 0; q < yy.size(); ++q) yy[q] += step * dt[j] * S[j][q];
          }
          project_y(yy);
          if (!newton(Z, tt, yy, opt.warmup_iters, opt.warmup_tol, false).ok) continue;
          const double trial_full = eval(Z, tt, yy, G).second;
          if (trial_full <= (1 - 1e-4 * step) * full) {
            t.swap(tt);
            y.swap(yy);
            full = trial_full;
            accepted = true;
            break;
          }
        }
        ++rep.ring_iterations;
        if (!accepted) break;
      }
      std::copy(y.begin(), y.begin() + N2, x.begin());
      rep.max_iterate_defect = std::max(rep.max_iterate_defect, defect_of(x));
    }
  }

  const Outcome final = newton({}, {}, x, opt.max_iters, opt.tol, true);
  rep.converged = final.ok;
  if (!rep.converged && rep.message.empty()) rep.message = "iteration limit reached";

  GridField sol(g, eps);
  unstack(x, sol);
  rep.symmetry_defect_final = symmetry_defect(sol, cls).max();
  rep.correction_norm_eps = correction_norm(sol, initial, eps, P, Q);
  rep.ansatz_norm_eps = eps_norm(initial, eps, P, Q);
  const PeakCensus census = peak_census(sol, opt.threshold_fraction);
  rep.peak_census_u = census.u;
  rep.peak_census_v = census.v;
  // The gap metrics need (mu1, mu2, beta) only.
  if (opt.mode == SolveMode::Synchronized) {
    CoupledParams p;
    p.mu1 = c.mu1;
    p.mu2 = c.mu2;
    p.beta = c.beta;
    rep.profile_gap = profile_gap_sync(sol, p);
  } else {
    rep.profile_gap = profile_gap_seg(sol, c.mu1, c.mu2, opt.k, opt.gap_rotation);
  }
  return {std::move(sol), std::move(rep)};
}

PeakCensus peak_census(const GridField& field, double threshold_fraction) {
  const GridSpec& g = field.grid;
  const int n = g.n;
  auto count = [&](const std::vector<double>& f) {
    Census c;
    double peak = 0;
    for (double x : f) peak = std::max(peak, std::abs(x));
    if (peak == 0) return c;
    const double thr = threshold_fraction * peak;
    for (int i = 1; i < n - 1; ++i)
      for (int j = 1; j < n - 1; ++j)
        for (int l = 1; l < n - 1; ++l) {
          const double x = f[g.index(i, j, l)];
          if (std::abs(x) <= thr) continue;
          bool is_max = true, is_min = true;
          for (int a = -1; a <= 1 && (is_max || is_min); ++a)
            for (int b = -1; b <= 1; ++b)
              for (int d = -1; d <= 1; ++d) {
                if (!a && !b && !d) continue;
                const double y = f[g.index(i + a, j + b, l + d)];
                if (y >= x) is_max = false;
                if (y <= x) is_min = false;
              }
          if (is_max && x > 0) ++c.positives;
          if (is_min && x < 0) ++c.negatives;
        }
    return c;
  };
  return {count(field.u), count(field.v)};
}

ProfileGap profile_gap_sync(const GridField& field, const CoupledParams& params) {
  const double a = std::sqrt(std::abs(params.mu1 - params.beta));
  const double b = std::sqrt(std::abs(params.mu2 - params.beta));
  std::vector<double> f(field.u.size());
  ProfileGap gap;
  for (std::size_t i = 0; i < f.size(); ++i) {
    f[i] = a * field.u[i] - b * field.v[i];
    gap.sup = std::max(gap.sup, std::abs(f[i]));
  }
  gap.h1 = h1_norm(field.grid, f);
  return gap;
}

ProfileGap profile_gap_seg(const GridField& field, double mu1, double mu2, int k, double angle) {
  if (angle == 0) angle = std::numbers::pi / k;
  const GridSpec& g = field.grid;
  const int n = g.n;
  const double c = std::cos(angle), s = std::sin(angle);
  const double a = std::sqrt(mu2), b = std::sqrt(mu1);
  std::vector<double> f(g.size());
  ProfileGap gap;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int l = 0; l < n; ++l) {
        const double x = g.coord(i), y = g.coord(j);
        const double vt = field.interpolate(1, {c * x - s * y, s * x + c * y, g.coord(l)});
        const std::size_t id = g.index(i, j, l);
        f[id] = a * field.u[id] - b * vt;
        gap.sup = std::max(gap.sup, std::abs(f[id]));
      }
  gap.h1 = h1_norm(g, f);
  return gap;
}

double eps_norm(const GridField& field, double eps, const PotentialModel& P,
                const PotentialModel& Q) {
  System sys(field.grid, eps, P, Q, {});
  return std::sqrt(std::max(0.0, sys.metric_norm2(stack(field))));
}

double correction_norm(const GridField& solution, const GridField& ansatz, double eps,
                       const PotentialModel& P, const PotentialModel& Q) {
  if (!(solution.grid == ansatz.grid))
    throw Error(ErrorCode::GridMismatch, "solution and ansatz live on different grids");
  GridField diff(solution.grid, eps);
  for (std::size_t i = 0; i < diff.u.size(); ++i) {
    diff.u[i] = solution.u[i] - ansatz.u[i];
    diff.v[i] = solution.v[i] - ansatz.v[i];
  }
  return eps_norm(diff, eps, P, Q);
}

GridField ring_translation(const PeakConfiguration& config, const RadialProfile& U, double amp_u,
                           const RadialProfile& V, double amp_v, const GridSpec& grid) {
  GridField t(grid, config.eps);
  add_ring_derivative(t.u, grid, config.eps, U, amp_u, config.x_points, config.signs);
  const auto& vpts = config.y_points ? *config.y_points : config.x_points;
  add_ring_derivative(t.v, grid, config.eps, V, amp_v, vpts, config.signs);
  return t;
}

CoercivityResult coercivity_probe(const GridField& ansatz, double eps, const PotentialModel& P,
                                  const PotentialModel& Q, const SystemCoefficients& c,
                                  const ProbeSetup& setup, int n_probes) {
  check_resolution(ansatz.grid, eps);
  if (n_probes < 1) throw Error(ErrorCode::InvalidParam, "need at least one probe");
  if (!(setup.translation.grid == ansatz.grid))
    throw Error(ErrorCode::GridMismatch, "translation field grid differs from the ansatz");
  const GridSpec& g = ansatz.grid;
  const std::size_t N = g.size();
  const SymmetryClass cls = class_for(setup.mode, setup.k);
  System sys(g, eps, P, Q, c);
  const Vec x = stack(ansatz);
  sys.linearize(x);

  auto rayleigh = [&](const Vec& d) {
    Vec Jd;
    sys.apply_jacobian(d, Jd);
    return weighted_dot(g, d, Jd) / sys.metric_norm2(d);
  };

  // Constraint directions (u^2 du/dr, 0) and (0, v^2 dv/dr), orthonormalised.
  std::vector<Vec> cons;
  for (int comp = 0; comp < 2; ++comp) {
    Vec z(2 * N, 0.0);
    const auto& f = ansatz.component(comp);
    const auto& t = setup.translation.component(comp);
    for (std::size_t i = 0; i < N; ++i) z[comp * N + i] = f[i] * f[i] * t[i];
    for (const auto& q : cons) {
      const double a = dot(z, q);
      for (std::size_t i = 0; i < z.size(); ++i) z[i] -= a * q[i];
    }
    const double nz = norm2(z);
    if (nz > 0) {
      for (double& v : z) v /= nz;
      cons.push_back(std::move(z));
    }
  }

  CoercivityResult res{};
  res.translation_rayleigh = rayleigh(stack(setup.translation));

  // Peak centres: nodes of largest |u| and |v| in each symmetric orbit are enough, since
  // the probe is symmetrised afterwards.
  std::vector<Point3> centres;
  for (int comp = 0; comp < 2; ++comp) {
    const auto& f = ansatz.component(comp);
    const auto it = std::max_element(f.begin(), f.end(),
                                     [](double a, double b) { return std::abs(a) < std::abs(b); });
    const std::size_t id = static_cast<std::size_t>(it - f.begin());
    const int n = g.n;
    const int i = static_cast<int>(id / (static_cast<std::size_t>(n) * n));
    const int j = static_cast<int>((id / n) % n);
    const int l = static_cast<int>(id % n);
    centres.push_back({g.coord(i), g.coord(j), g.coord(l)});
  }

  std::mt19937_64 rng(setup.seed);
  std::normal_distribution<double> normal(0.0, 1.0);
  std::uniform_real_distribution<double> width(0.3, 1.5);
  std::vector<double> rq, ratios;
  const int n = g.n;
  for (int p = 0; p < n_probes; ++p) {
    Vec d(2 * N, 0.0);
    for (int comp = 0; comp < 2; ++comp) {
      for (int bump = 0; bump < 3; ++bump) {
        const Point3& c0 = centres[static_cast<std::size_t>(comp)];
        const Point3 centre{c0[0] + eps * normal(rng), c0[1] + eps * normal(rng),
                            c0[2] + eps * normal(rng)};
        const double sigma = eps * width(rng);
        const double amp = normal(rng);
        for (int i = 0; i < n; ++i)
          for (int j = 0; j < n; ++j)
            for (int l = 0; l < n; ++l) {
              const double dx = g.coord(i) - centre[0], dy = g.coord(j) - centre[1],
                           dz = g.coord(l) - centre[2];
              const double r2 = (dx * dx + dy * dy + dz * dz) / (sigma * sigma);
              if (r2 > 40) continue;
              d[comp * N + g.index(i, j, l)] += amp * std::exp(-0.5 * r2);
            }
      }
    }
    project(d, g, cls);
    for (const auto& q : cons) {
      const double a = dot(d, q);
      for (std::size_t i = 0; i < d.size(); ++i) d[i] -= a * q[i];
    }
    if (norm2(d) == 0) continue;
    rq.push_back(rayleigh(d));
    Vec Jd;
    sys.apply_jacobian(d, Jd);
    ratios.push_back(sys.dual_norm(Jd) / std::sqrt(sys.metric_norm2(d)));
  }
  res.probes = static_cast<int>(rq.size());
  if (rq.empty()) throw Error(ErrorCode::InvalidParam, "every probe vanished after projection");
  res.min_rayleigh = *std::min_element(rq.begin(), rq.end());
  res.min_operator_ratio = *std::min_element(ratios.begin(), ratios.end());
  std::vector<double> sorted = rq;
  std::nth_element(sorted.begin(), sorted.begin() + sorted.size() / 2, sorted.end());
  res.median_rayleigh = sorted[sorted.size() / 2];
  return res;
}

double residual_dual_norm(const GridField& ansatz, double eps, const PotentialModel& P,
                          const PotentialModel& Q, const SystemCoefficients& c) {
  check_resolution(ansatz.grid, eps);
  System sys(ansatz.grid, eps, P, Q, c);
  Vec F;
  sys.residual(stack(ansatz), F, true);
  return sys.dual_norm(F);
}

std::string report_json(const SolveReport& r) {
  nlohmann::ordered_json j;
  j["converged"] = r.converged;
  j["warmup_iterations"] = r.warmup_iterations;
  j["warmup_residual"] = r.warmup_residual;
  j["ring_iterations"] = r.ring_iterations;
  j["residual_history"] = r.residual_history;
  j["linear_iterations"] = r.linear_iterations;
  j["step_lengths"] = r.step_lengths;
  j["correction_norm_eps"] = r.correction_norm_eps;
  j["ansatz_norm_eps"] = r.ansatz_norm_eps;
  j["peak_census_u"] = {r.peak_census_u.positives, r.peak_census_u.negatives};
  j["peak_census_v"] = {r.peak_census_v.positives, r.peak_census_v.negatives};
  j["symmetry_defect_initial"] = r.symmetry_defect_initial;
  j["symmetry_defect_final"] = r.symmetry_defect_final;
  j["max_iterate_defect"] = r.max_iterate_defect;
  j["profile_gap_h1"] = r.profile_gap.h1;
  j["profile_gap_sup"] = r.profile_gap.sup;
  j["message"] = r.message;
  return j.dump(2);
}

void write_checkpoint(const std::filesystem::path& dir, const GridField& field,
                      const SolveReport& report) {
  std::filesystem::create_directories(dir);
  {
    std::ofstream os(dir / "field.txt");
    if (!os) throw Error(ErrorCode::Io, "cannot write " + (dir / "field.txt").string());
    field.dump(os);
  }
  std::ofstream js(dir / "report.json");
  if (!js) throw Error(ErrorCode::Io, "cannot write " + (dir / "report.json").string());
  js << report_json(report) << "\n";
}

GridField read_checkpoint_field(const std::filesystem::path& dir) {
  std::ifstream is(dir / "field.txt");
  if (!is) throw Error(ErrorCode::Io, "cannot read " + (dir / "field.txt").string());
  return GridField::load(is);
}

}  // namespace nodalvec
