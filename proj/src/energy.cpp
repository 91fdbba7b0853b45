#include "nodalvec/energy.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numbers>
#include <ostream>

#include <boost/math/quadrature/gauss.hpp>

#include "nodalvec/ansatz.hpp"
#include "nodalvec/errors.hpp"

namespace nodalvec {

namespace {

using boost::math::quadrature::gauss;
constexpr double kPi = std::numbers::pi;

// Fourth-order corrected trapezoid over profile nodes: f(r_i) given with its derivative.
template <class F, class DF>
double corrected_trapezoid(const RadialProfile& p, F f, DF df) {
  const std::size_t n = p.size();
  const double h = p.spacing();
  std::vector<double> vals(n);
  for (std::size_t i = 0; i < n; ++i) vals[i] = f(i);
  vals.front() *= 0.5;
  vals.back() *= 0.5;
  const double trap = h * pairwise_sum(vals.data(), n);
  return trap - h * h / 12.0 * (df(n - 1) - df(0));
}

// Composite Simpson on [a, b] with an even number of panels near `panels`.
template <class F>
double simpson(F f, double a, double b, int panels) {
  if (b <= a) return 0.0;
  if (panels % 2) ++panels;
  const double h = (b - a) / panels;
  double s = f(a) + f(b);
  for (int i = 1; i < panels; ++i) s += (i % 2 ? 4.0 : 2.0) * f(a + i * h);
  return s * h / 3.0;
}

// Integral over the half space closer to the origin centre of f(|y|) g(|y - D e1|).
double half_space(const std::function<double(double)>& f, const std::function<double(double)>& g,
                  double D, double reach) {
  auto shell = [&](double rho) {
    if (rho == 0) return 0.0;
    const double tmax = std::min(1.0, D / (2 * rho));
    const double inner = gauss<double, 40>::integrate(
        [&](double t) { return g(std::sqrt(std::max(0.0, rho * rho + D * D - 2 * rho * D * t))); },
        -1.0, tmax);
    return 2 * kPi * rho * rho * f(rho) * inner;
  };
  const double mid = std::min(D / 2, reach);
  const double per_unit = 200.0;
  return simpson(shell, 0.0, mid, std::max(20, static_cast<int>(mid * per_unit))) +
         simpson(shell, mid, reach, std::max(20, static_cast<int>((reach - mid) * per_unit)));
}

double two_centre(const std::function<double(double)>& f, const std::function<double(double)>& g,
                  double D, double reach) {
  return half_space(f, g, D, reach) + half_space(g, f, D, reach);
}

// Spherical-shell quadrature of (K(|x0 + eps y|) - 1) w(|y|)^2 with |x0| = r.
double potential_excess(double eps, double r, const PotentialModel& K, const RadialProfile& w) {
  if (K.a == 0 && K.c_hot == 0) return 0.0;
  auto shell = [&](double rho) {
    const double wv = w.evaluate(rho);
    const double inner = gauss<double, 40>::integrate(
        [&](double t) {
          const double x2 = r * r + 2 * r * eps * rho * t + eps * eps * rho * rho;
          return K(std::sqrt(std::max(0.0, x2))) - 1.0;
        },
        -1.0, 1.0);
    return 2 * kPi * rho * rho * wv * wv * inner;
  };
  return simpson(shell, 0.0, w.r_max(), static_cast<int>(w.size()));
}

}  // namespace

double pairwise_sum(const double* x, std::size_t n) {
  if (n <= 8) {
    double s = 0;
    for (std::size_t i = 0; i < n; ++i) s += x[i];
    return s;
  }
  const std::size_t half = n / 2;
  return pairwise_sum(x, half) + pairwise_sum(x + half, n - half);
}

void PotentialModel::check_positive(double box_radius) const {
  for (int i = 0; i <= 1000; ++i) {
    const double r = box_radius * i / 1000.0;
    if (!((*this)(r) > 0))
      throw Error(ErrorCode::InvalidParam,
                  "potential is not positive at radius " + std::to_string(r));
  }
}

Moments moments(const RadialProfile& p) {
  const auto u = p.values();
  const auto du = p.derivs();
  auto r = [&](std::size_t i) { return p.radius(i); };
  Moments m;
  const double R = p.r_max(), c0 = p.c0();
  m.int_w2 = 4 * kPi *
             corrected_trapezoid(
                 p, [&](std::size_t i) { return u[i] * u[i] * r(i) * r(i); },
                 [&](std::size_t i) { return 2 * u[i] * du[i] * r(i) * r(i) + 2 * u[i] * u[i] * r(i); });
  m.int_w2 += 4 * kPi * c0 * c0 * std::exp(-2 * R) / 2;
  m.int_w4 = 4 * kPi *
             corrected_trapezoid(
                 p, [&](std::size_t i) { return std::pow(u[i], 4) * r(i) * r(i); },
                 [&](std::size_t i) {
                   return 4 * std::pow(u[i], 3) * du[i] * r(i) * r(i) + 2 * std::pow(u[i], 4) * r(i);
                 });
  m.int_w4 += 4 * kPi * std::pow(c0, 4) * std::exp(-4 * R) / (4 * R * R);
  // Angular integral of e^{-x1} over the sphere of radius r is 4 pi sinh(r)/r.
  m.int_w3_exp = 4 * kPi *
                 corrected_trapezoid(
                     p, [&](std::size_t i) { return std::pow(u[i], 3) * r(i) * std::sinh(r(i)); },
                     [&](std::size_t i) {
                       return 3 * u[i] * u[i] * du[i] * r(i) * std::sinh(r(i)) +
                              std::pow(u[i], 3) * (std::sinh(r(i)) + r(i) * std::cosh(r(i)));
                     });
  m.int_w3_exp += 4 * kPi * std::pow(c0, 3) * std::exp(-2 * R) / (4 * R * R);
  m.int_grad2 = 4 * kPi *
                corrected_trapezoid(
                    p, [&](std::size_t i) { return du[i] * du[i] * r(i) * r(i); },
                    [&](std::size_t i) {
                      // (u'^2 r^2)' = 2u'u'' r^2 + 2u'^2 r with u'' from the equation.
                      const double ri = r(i);
                      const double upp = i == 0 ? (u[0] - p.mu() * std::pow(u[0], 3)) / 3.0
                                                : -2 * du[i] / ri + u[i] - p.mu() * std::pow(u[i], 3);
                      return 2 * du[i] * upp * ri * ri + 2 * du[i] * du[i] * ri;
                    });
  m.int_grad2 += 4 * kPi * c0 * c0 * std::exp(-2 * R) / 2;
  m.int_r2_w2 = 4 * kPi *
                corrected_trapezoid(
                    p, [&](std::size_t i) { return u[i] * u[i] * std::pow(r(i), 4); },
                    [&](std::size_t i) {
                      return 2 * u[i] * du[i] * std::pow(r(i), 4) + 4 * u[i] * u[i] * std::pow(r(i), 3);
                    });
  m.int_r2_w2 += 4 * kPi * c0 * c0 * std::exp(-2 * R) * R * R / 2;
  return m;
}

EnergyBreakdown energy(const GridField& field, double eps, const PotentialModel& P,
                       const PotentialModel& Q, const CoupledParams& params) {
  const GridSpec& g = field.grid;
  const double h = g.spacing();
  if (h > eps / 4 * (1 + 1e-12))
    throw Error(ErrorCode::ResolutionTooCoarse, "grid spacing exceeds eps/4");
  const int n = g.n;
  const auto& u = field.u;
  const auto& v = field.v;
  auto at = [&](const std::vector<double>& f, int i, int j, int l) {
    if (i < 0 || j < 0 || l < 0 || i >= n || j >= n || l >= n) return 0.0;
    return f[g.index(i, j, l)];
  };
  auto grad2 = [&](const std::vector<double>& f, int i, int j, int l) {
    const double c = 1.0 / (12 * h);
    const double gx = c * (at(f, i - 2, j, l) - 8 * at(f, i - 1, j, l) + 8 * at(f, i + 1, j, l) -
                           at(f, i + 2, j, l));
    const double gy = c * (at(f, i, j - 2, l) - 8 * at(f, i, j - 1, l) + 8 * at(f, i, j + 1, l) -
                           at(f, i, j + 2, l));
    const double gz = c * (at(f, i, j, l - 2) - 8 * at(f, i, j, l - 1) + 8 * at(f, i, j, l + 1) -
                           at(f, i, j, l + 2));
    return gx * gx + gy * gy + gz * gz;
  };

  constexpr int kTerms = 7;
  const std::size_t lines = static_cast<std::size_t>(n) * n;
  std::vector<std::vector<double>> line_sums(kTerms, std::vector<double>(lines));
  std::vector<std::vector<double>> buf(kTerms, std::vector<double>(n));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      const double x = g.coord(i), y = g.coord(j);
      for (int l = 0; l < n; ++l) {
        const double z = g.coord(l);
        const double rad = std::sqrt(x * x + y * y + z * z);
        const std::size_t id = g.index(i, j, l);
        const double uu = u[id] * u[id], vv = v[id] * v[id];
        buf[0][l] = grad2(u, i, j, l);
        buf[1][l] = grad2(v, i, j, l);
        buf[2][l] = P(rad) * uu;
        buf[3][l] = Q(rad) * vv;
        buf[4][l] = uu * uu;
        buf[5][l] = vv * vv;
        buf[6][l] = uu * vv;
      }
      const std::size_t line = static_cast<std::size_t>(i) * n + j;
      for (int t = 0; t < kTerms; ++t) line_sums[t][line] = pairwise_sum(buf[t].data(), n);
    }
  const double dv = h * h * h;
  double s[kTerms];
  for (int t = 0; t < kTerms; ++t) s[t] = dv * pairwise_sum(line_sums[t].data(), lines);

  EnergyBreakdown e;
  e.eps = eps;
  e.kinetic_u = eps * eps * s[0];
  e.kinetic_v = eps * eps * s[1];
  e.potential_u = s[2];
  e.potential_v = s[3];
  e.quartic_u = params.mu1 * s[4];
  e.quartic_v = params.mu2 * s[5];
  e.coupling = s[6];
  e.total = 0.5 * (e.kinetic_u + e.potential_u + e.kinetic_v + e.potential_v) -
            0.25 * (e.quartic_u + e.quartic_v) - 0.5 * params.beta * e.coupling;
  return e;
}

double single_peak_energy(double eps, double r, const PotentialModel& P, const PotentialModel& Q,
                          const CoupledParams& params, const RadialProfile& w) {
  if (std::abs(w.mu() - 1.0) > 1e-12)
    throw Error(ErrorCode::InvalidParam, "synchronized peaks use the mu = 1 ground state");
  const Moments m = moments(w);
  const double a2 = params.alpha * params.alpha, g2 = params.gamma * params.gamma;
  const double quad = 0.5 * (a2 + g2) * (m.int_grad2 + m.int_w2) +
                      0.5 * a2 * potential_excess(eps, r, P, w) +
                      0.5 * g2 * potential_excess(eps, r, Q, w);
  // (u, v) = (alpha w, gamma w): u^4, v^4 and u^2 v^2 all reduce to multiples of w^4.
  const double quartic = params.quartic_weight() * m.int_w4;
  return eps * eps * eps * (quad - quartic);
}

double single_species_peak_energy(double eps, double r, const PotentialModel& K, double mu,
                                  const RadialProfile& U) {
  const Moments m = moments(U);
  return eps * eps * eps *
         (0.5 * (m.int_grad2 + m.int_w2) + 0.5 * potential_excess(eps, r, K, U) -
          0.25 * mu * m.int_w4);
}

ExpansionCoefficients sync_coefficients(const CoupledParams& params, const Moments& mom) {
  return {params.quartic_weight() * mom.int_w4, 0.5 * params.alpha * params.alpha * mom.int_w2,
          0.5 * params.gamma * params.gamma * mom.int_w2};
}

double single_peak_prediction(double eps, double r, const PotentialModel& P,
                              const PotentialModel& Q, const CoupledParams& params,
                              const Moments& mom) {
  const auto c = sync_coefficients(params, mom);
  double s = c.A;
  if (P.a != 0) s += P.a * c.B * std::pow(r, P.m);
  if (Q.a != 0) s += Q.a * c.C0 * std::pow(r, Q.m);
  return eps * eps * eps * s;
}

PairInteraction pair_interaction(const RadialProfile& profile, double d, double eps) {
  if (!(eps > 0) || !(d >= 0)) throw Error(ErrorCode::InvalidParam, "need eps > 0, d >= 0");
  const double D = d / eps;
  const double e3 = eps * eps * eps;
  if (D == 0) {
    const double v = e3 * moments(profile).int_w4;
    return {v, v / e3, 0.0};
  }
  if (D < 4) throw Error(ErrorCode::TooClose, "d/eps below 4");
  auto w = [&](double r) { return profile.evaluate(r); };
  auto w3 = [&](double r) { return std::pow(profile.evaluate(r), 3); };
  const double I = two_centre(w3, w, D, profile.r_max());
  const double c_hat = I * std::exp(D);
  return {e3 * I, c_hat, c_hat * D};
}

CrossInteraction cross_species_interaction(const RadialProfile& U1, const RadialProfile& U2,
                                           double d, double eps) {
  if (!(eps > 0) || !(d >= 0)) throw Error(ErrorCode::InvalidParam, "need eps > 0, d >= 0");
  const double D = d / eps;
  const double e3 = eps * eps * eps;
  auto f = [&](double r) { return std::pow(U1.evaluate(r), 2); };
  auto g = [&](double r) { return std::pow(U2.evaluate(r), 2); };
  if (D == 0) {
    const double R = std::min(U1.r_max(), U2.r_max());
    const double v = e3 * simpson([&](double r) { return 4 * kPi * r * r * f(r) * g(r); }, 0.0, R,
                                  static_cast<int>(std::max(U1.size(), U2.size())));
    return {v, v / e3};
  }
  if (D < 4) throw Error(ErrorCode::TooClose, "d/eps below 4");
  const double I = two_centre(f, g, D, std::min(U1.r_max(), U2.r_max()));
  return {e3 * I, I * std::exp(2 * D)};
}

int neighbour_count(int k) { return k == 1 ? 1 : 2; }

double sync_interaction_coefficient(int k, double c_hat) { return neighbour_count(k) * c_hat; }

double seg_interaction_coefficient(int k, double c_hat, double mu) {
  return neighbour_count(k) * c_hat / (2 * mu);
}

double multipeak_prediction_sync(double eps, double r, int k, const PotentialModel& P,
                                 const PotentialModel& Q, const CoupledParams& params,
                                 const Moments& mom, double C) {
  const double single = single_peak_prediction(eps, r, P, Q, params, mom);
  const double expo = std::exp(-neighbour_distance(k, r) / eps);
  return 2 * k * (single + eps * eps * eps * C * params.interaction_weight() * expo);
}

SegregatedPrediction multipeak_prediction_seg(double eps, double r, double rho, int k,
                                              const PotentialModel& P, const PotentialModel& Q,
                                              double mu1, double mu2, const Moments& mom1,
                                              const Moments& mom2, double B1, double B2) {
  SegregatedPrediction p{};
  p.A_tilde = 0.25 * (mu1 * mom1.int_w4 + mu2 * mom2.int_w4);
  p.B_tilde = 0.5 * mom1.int_w2;
  p.C_tilde = 0.5 * mom2.int_w2;
  double s = p.A_tilde;
  if (P.a != 0) s += P.a * p.B_tilde * std::pow(r, P.m);
  if (Q.a != 0) s += Q.a * p.C_tilde * std::pow(rho, Q.m);
  s += B1 * std::exp(-neighbour_distance(k, r) / eps) +
       B2 * std::exp(-neighbour_distance(k, rho) / eps);
  p.total = 2 * k * eps * eps * eps * s;
  return p;
}

double cross_distance(int k, double r, double rho) {
  const double t = kPi / (2 * k);
  return std::hypot(rho - r * std::cos(t), r * std::sin(t));
}

void write_energy_csv(std::ostream& os, const std::vector<EnergyRow>& rows) {
  os << "eps,k,r,rho,measured,predicted,kinetic,potential,quartic,coupling\n";
  char buf[320];
  for (const auto& row : rows) {
    std::snprintf(buf, sizeof buf, "%.10g,%d,%.12g,%.12g,%.12g,%.12g,%.12g,%.12g,%.12g,%.12g\n",
                  row.eps, row.k, row.r, row.rho, row.measured, row.predicted, row.kinetic,
                  row.potential, row.quartic, row.coupling);
    os << buf;
  }
}

}  // namespace nodalvec
