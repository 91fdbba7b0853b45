#include "nodalvec/ground_state.hpp"

#include <array>
#include <cmath>
#include <cstdio>
#include <istream>
#include <ostream>
#include <sstream>
#include <string>

#include <boost/numeric/odeint.hpp>

#include "nodalvec/errors.hpp"

namespace nodalvec {

namespace odeint = boost::numeric::odeint;

RadialProfile::RadialProfile(double mu, std::vector<double> values, std::vector<double> derivs,
                             double r_max, double c0)
    : mu_(mu), values_(std::move(values)), derivs_(std::move(derivs)), r_max_(r_max), c0_(c0) {
  if (values_.size() < 2 || values_.size() != derivs_.size())
    throw Error(ErrorCode::InvalidParam, "profile needs matching value/derivative arrays");
  h_ = r_max_ / static_cast<double>(values_.size() - 1);
}

std::vector<double> RadialProfile::radii() const {
  std::vector<double> r(values_.size());
  for (std::size_t i = 0; i < r.size(); ++i) r[i] = radius(i);
  return r;
}

void RadialProfile::evaluate(double r, double& value, double& deriv) const {
  if (r >= r_max_) {
    if (r == r_max_) {
      value = values_.back();
      deriv = derivs_.back();
      return;
    }
    const double e = c0_ * std::exp(-r) / r;
    value = e;
    deriv = -e * (1.0 + 1.0 / r);
    return;
  }
  r = std::max(r, 0.0);
  auto i = static_cast<std::size_t>(r / h_);
  if (i >= values_.size() - 1) i = values_.size() - 2;
  const double t = r / h_ - static_cast<double>(i);
  const double y0 = values_[i], y1 = values_[i + 1];
  const double d0 = derivs_[i] * h_, d1 = derivs_[i + 1] * h_;
  const double t2 = t * t, t3 = t2 * t;
  value = (2 * t3 - 3 * t2 + 1) * y0 + (t3 - 2 * t2 + t) * d0 + (-2 * t3 + 3 * t2) * y1 +
          (t3 - t2) * d1;
  deriv = ((6 * t2 - 6 * t) * y0 + (3 * t2 - 4 * t + 1) * d0 + (-6 * t2 + 6 * t) * y1 +
           (3 * t2 - 2 * t) * d1) /
          h_;
}

double RadialProfile::evaluate(double r) const {
  double v, d;
  evaluate(r, v, d);
  return v;
}

double RadialProfile::derivative(double r) const {
  double v, d;
  evaluate(r, v, d);
  return d;
}

void RadialProfile::save(std::ostream& os) const {
  char buf[128];
  std::snprintf(buf, sizeof buf, "# nodalvec-profile v1 mu=%.17g c0=%.17g nodes=%zu\n", mu_, c0_,
                values_.size());
  os << buf;
  for (std::size_t i = 0; i < values_.size(); ++i) {
    std::snprintf(buf, sizeof buf, "%.17g %.17g %.17g\n", radius(i), values_[i], derivs_[i]);
    os << buf;
  }
}

RadialProfile RadialProfile::load(std::istream& is) {
  std::string header;
  if (!std::getline(is, header)) throw Error(ErrorCode::Io, "empty profile stream");
  double mu = 0, c0 = 0;
  std::size_t nodes = 0;
  if (std::sscanf(header.c_str(), "# nodalvec-profile v1 mu=%lf c0=%lf nodes=%zu", &mu, &c0,
                  &nodes) != 3)
    throw Error(ErrorCode::Io, "unrecognised profile header: " + header);
  std::vector<double> u(nodes), du(nodes);
  double r = 0;
  for (std::size_t i = 0; i < nodes; ++i) {
    if (!(is >> r >> u[i] >> du[i]))
      throw Error(ErrorCode::Io, "truncated profile at node " + std::to_string(i));
  }
  return RadialProfile(mu, std::move(u), std::move(du), r, c0);
}

namespace {

using State = std::array<double, 2>;

enum class Outcome { Crossed, TurnedUp, Decayed };

struct Radial {
  double mu;
  void operator()(const State& y, State& dy, double r) const {
    dy[0] = y[1];
    dy[1] = -2.0 * y[1] / r + y[0] - mu * y[0] * y[0] * y[0];
  }
};

struct Shot {
  Outcome outcome;
  std::size_t switch_node;  // first node below the tail threshold, 0 if never reached
};

// Integrates node by node from the series start until the trajectory crosses zero,
// turns up, or reaches the end of the grid.
Shot shoot(double mu, double u0, double h, std::size_t nodes, const GroundStateOptions& opt,
           std::vector<double>& u, std::vector<double>& du) {
  const double c2 = (u0 - mu * u0 * u0 * u0) / 6.0;
  const double c4 = c2 * (1.0 - 3.0 * mu * u0 * u0) / 20.0;
  const double c6 = (c4 - 3.0 * mu * u0 * (u0 * c4 + c2 * c2)) / 42.0;
  u.assign(nodes, 0.0);
  du.assign(nodes, 0.0);
  u[0] = u0;
  const double h2 = h * h;
  State y{u0 + h2 * (c2 + h2 * (c4 + h2 * c6)), h * (2 * c2 + h2 * (4 * c4 + 6 * h2 * c6))};
  u[1] = y[0];
  du[1] = y[1];
  auto stepper = odeint::make_controlled(1e-13, 1e-13, odeint::runge_kutta_dopri5<State>());
  Radial sys{mu};
  const double threshold = opt.tail_switch * u0;
  std::size_t below = 0;
  double dt = h / 4;
  for (std::size_t i = 1; i + 1 < nodes; ++i) {
    const double r0 = static_cast<double>(i) * h;
    odeint::integrate_adaptive(stepper, sys, y, r0, r0 + h, dt);
    u[i + 1] = y[0];
    du[i + 1] = y[1];
    if (y[0] < 0) return {Outcome::Crossed, below};
    if (y[1] > 0) return {Outcome::TurnedUp, below};
    if (below == 0 && y[0] < threshold) below = i + 1;
  }
  return {Outcome::Decayed, below};
}

}  // namespace

RadialProfile solve_ground_state(double mu, double r_max, int nodes,
                                 const GroundStateOptions& options) {
  if (!(mu > 0)) throw Error(ErrorCode::InvalidParam, "mu must be positive");
  if (!(r_max >= 20)) throw Error(ErrorCode::InvalidParam, "r_max must be at least 20");
  if (nodes < 2000) throw Error(ErrorCode::InvalidParam, "nodes must be at least 2000");

  const auto n = static_cast<std::size_t>(nodes);
  const double h = r_max / static_cast<double>(n - 1);
  const double s = 1.0 / std::sqrt(mu);
  double lo = s * (1.0 + 1e-3), hi = 10.0 * s;
  std::vector<double> u, du;

  // Bisection down to adjacent doubles: the decaying branch is a measure-zero set, so the
  // bracket is only useful once the growing mode is pushed past the tail switch.
  while (true) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    const Shot shot = shoot(mu, mid, h, n, options, u, du);
    if (shot.outcome == Outcome::Crossed)
      hi = mid;
    else
      lo = mid;
  }

  // Of the two bracket ends pick whichever reaches the tail switch with the smallest
  // growing-mode contamination.
  double best_b = INFINITY;
  std::size_t best_switch = 0;
  std::vector<double> best_u, best_du;
  double best_a = 0;
  for (double u0 : {lo, hi}) {
    const Shot shot = shoot(mu, u0, h, n, options, u, du);
    if (shot.switch_node == 0) continue;
    const std::size_t k = shot.switch_node;
    const double r = static_cast<double>(k) * h;
    // u = A e^{-r}/r + B e^{r}/r and its derivative, solved for (A, B).
    const double em = std::exp(-r) / r, ep = std::exp(r) / r;
    const double dem = -em * (1.0 + 1.0 / r), dep = ep * (1.0 - 1.0 / r);
    const double det = em * dep - ep * dem;
    const double a = (u[k] * dep - ep * du[k]) / det;
    const double b = (em * du[k] - dem * u[k]) / det;
    const double contamination = std::abs(b * ep) / u[k];
    if (contamination < best_b) {
      best_b = contamination;
      best_switch = k;
      best_a = a;
      best_u = u;
      best_du = du;
    }
  }
  if (best_switch == 0 || best_b > options.tail_tol)
    throw Error(ErrorCode::NonConvergence,
                "shooting bracket collapsed without a decaying trajectory");

  for (std::size_t i = best_switch; i < n; ++i) {
    const double r = static_cast<double>(i) * h;
    const double e = best_a * std::exp(-r) / r;
    best_u[i] = e;
    best_du[i] = -e * (1.0 + 1.0 / r);
  }
  best_du[0] = 0.0;
  return RadialProfile(mu, std::move(best_u), std::move(best_du), r_max, best_a);
}

DecayFit decay_constant(const RadialProfile& profile, double tail_tol) {
  if (profile.r_max() < 20) throw Error(ErrorCode::InvalidParam, "r_max must be at least 20");
  const auto vals = profile.values();
  std::vector<double> g;
  for (std::size_t i = 1; i < vals.size(); ++i) {
    const double r = profile.radius(i);
    if (r < 0.6 * profile.r_max() || r > 0.9 * profile.r_max()) continue;
    if (!(vals[i] > 0)) throw Error(ErrorCode::PoorFit, "nonpositive profile value in tail");
    g.push_back(std::log(vals[i]) + r + std::log(r));
  }
  if (g.size() < 2) throw Error(ErrorCode::PoorFit, "fit window holds fewer than two nodes");
  double mean = 0;
  for (double x : g) mean += x;
  mean /= static_cast<double>(g.size());
  double var = 0;
  for (double x : g) var += (x - mean) * (x - mean);
  var /= static_cast<double>(g.size());
  const DecayFit fit{std::exp(mean), std::sqrt(var)};
  if (fit.residual > tail_tol)
    throw Error(ErrorCode::PoorFit, "decay fit residual " + std::to_string(fit.residual));
  return fit;
}

namespace {

// Sixth-order centred difference of the stored u' at node i, reflecting across the origin.
double second_derivative_at_node(const RadialProfile& profile, std::ptrdiff_t i) {
  const auto du = profile.derivs();
  auto d = [&](std::ptrdiff_t j) { return j < 0 ? -du[-j] : du[j]; };
  return (-d(i - 3) + 9 * d(i - 2) - 45 * d(i - 1) + 45 * d(i + 1) - 9 * d(i + 2) + d(i + 3)) /
         (60 * profile.spacing());
}

}  // namespace

double ode_residual_max(const RadialProfile& profile) {
  const auto u = profile.values();
  const auto du = profile.derivs();
  const double mu = profile.mu();
  double worst = 0;
  for (std::ptrdiff_t i = 1; i + 3 < static_cast<std::ptrdiff_t>(u.size()); ++i) {
    const double r = profile.radius(static_cast<std::size_t>(i));
    const double ui = u[i];
    const double res =
        second_derivative_at_node(profile, i) + 2.0 * du[i] / r - ui + mu * ui * ui * ui;
    worst = std::max(worst, std::abs(res));
  }
  return worst;
}

double radial_laplacian(const RadialProfile& profile, double r) {
  if (r > profile.r_max() - 3 * profile.spacing()) return profile.evaluate(r);
  auto i = static_cast<std::ptrdiff_t>(std::lround(r / profile.spacing()));
  if (i == 0) {
    // Laplacian at the centre is 3 u''(0); u''(0) from the even extension of u.
    const auto u = profile.values();
    const double h = profile.spacing();
    const double d2 = (2 * u[3] - 27 * u[2] + 270 * u[1] - 490 * u[0] + 270 * u[1] - 27 * u[2] +
                       2 * u[3]) /
                      (180 * h * h);
    return 3 * d2;
  }
  return second_derivative_at_node(profile, i) +
         2.0 * profile.derivs()[static_cast<std::size_t>(i)] / profile.radius(static_cast<std::size_t>(i));
}

double value_at_nearest_node(const RadialProfile& profile, double r) {
  if (r > profile.r_max() - 3 * profile.spacing()) return profile.evaluate(r);
  return profile.values()[static_cast<std::size_t>(std::lround(r / profile.spacing()))];
}

double ode_residual_at(const RadialProfile& profile, double r) {
  const double u = value_at_nearest_node(profile, r);
  return radial_laplacian(profile, r) - u + profile.mu() * u * u * u;
}

}  // namespace nodalvec
