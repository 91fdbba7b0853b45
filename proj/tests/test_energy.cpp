#include <doctest.h>

#include <cmath>
#include <numbers>

#include "nodalvec/ansatz.hpp"
#include "nodalvec/energy.hpp"
#include "nodalvec/errors.hpp"

using namespace nodalvec;

namespace {

const RadialProfile& w1() {
  static const RadialProfile p = solve_ground_state(1.0);
  return p;
}

const Moments& mom1() {
  static const Moments m = moments(w1());
  return m;
}

// Axisymmetric two-centre integral of f(|x|) g(|x - D e1|) by composite Simpson in
// (z, rho); unrelated to the library's split-at-the-bisector scheme.
double cylinder_integral(auto f, auto g, double D) {
  const double z0 = -14, z1 = D + 14, R = 14;
  const int nz = 2 * static_cast<int>((z1 - z0) / 0.02 / 2), nr = 2 * static_cast<int>(R / 0.02 / 2);
  const double hz = (z1 - z0) / nz, hr = R / nr;
  double total = 0;
  for (int i = 0; i <= nz; ++i) {
    const double z = z0 + i * hz;
    const double wz = (i == 0 || i == nz) ? 1 : (i % 2 ? 4 : 2);
    double inner = 0;
    for (int j = 0; j <= nr; ++j) {
      const double rho = j * hr;
      const double wr = (j == 0 || j == nr) ? 1 : (j % 2 ? 4 : 2);
      inner += wr * rho * f(std::hypot(z, rho)) * g(std::hypot(z - D, rho));
    }
    total += wz * inner * hr / 3;
  }
  return 2 * std::numbers::pi * total * hz / 3;
}

GridField single_peak(const GridSpec& g, double eps, const Point3& c, double a, double b,
                      const RadialProfile& w) {
  GridField f(g, eps);
  add_peaks(f.u, g, eps, w, a, {c}, {1});
  add_peaks(f.v, g, eps, w, b, {c}, {1});
  return f;
}

}  // namespace

TEST_CASE("moments of a synthetic exponential profile") {
  const int n = 16001;
  const double R = 40;
  std::vector<double> v(n), d(n);
  for (int i = 0; i < n; ++i) {
    const double r = R * i / (n - 1);
    v[i] = std::exp(-r);
    d[i] = -v[i];
  }
  const RadialProfile p(1.0, v, d, R, 0.0);
  const Moments m = moments(p);
  CHECK(m.int_w2 == doctest::Approx(std::numbers::pi).epsilon(1e-8));
  CHECK(m.int_w4 == doctest::Approx(4 * std::numbers::pi * 2.0 / 64).epsilon(1e-8));
  CHECK(m.int_grad2 == doctest::Approx(std::numbers::pi).epsilon(1e-8));
}

TEST_CASE("moments are stable under node doubling and scale with mu") {
  const Moments fine = moments(solve_ground_state(1.0, 25, 16000));
  CHECK(fine.int_w2 == doctest::Approx(mom1().int_w2).epsilon(1e-3));
  CHECK(fine.int_w4 == doctest::Approx(mom1().int_w4).epsilon(1e-3));
  CHECK(fine.int_grad2 == doctest::Approx(mom1().int_grad2).epsilon(1e-3));
  const Moments m3 = moments(solve_ground_state(3.0));
  CHECK(m3.int_w2 == doctest::Approx(mom1().int_w2 / 3).epsilon(1e-7));
  CHECK(m3.int_w4 == doctest::Approx(mom1().int_w4 / 9).epsilon(1e-7));
  // Pohozaev-type identities of the cubic ground state in R^3.
  CHECK(mom1().int_grad2 + mom1().int_w2 == doctest::Approx(mom1().int_w4).epsilon(1e-9));
  CHECK(mom1().int_grad2 == doctest::Approx(0.75 * mom1().int_w4).epsilon(1e-9));
}

TEST_CASE("grid energy basics") {
  const double eps = 0.2;
  const GridSpec g = grid_for(10 * eps, eps / 8);
  const CoupledParams p = classify(1, 1, 0.5);
  const PotentialModel one{0, 2};
  CHECK(energy(GridField(g, eps), eps, one, one, p).total == 0);

  SUBCASE("single centred peak recovers A") {
    const GridField f = single_peak(g, eps, {0, 0, 0}, p.alpha, p.gamma, w1());
    const double A = sync_coefficients(p, mom1()).A;
    CHECK(energy(f, eps, one, one, p).total / (eps * eps * eps) == doctest::Approx(A).epsilon(5e-3));
  }
  SUBCASE("translation invariance") {
    const GridField a = single_peak(g, eps, {0, 0, 0}, p.alpha, p.gamma, w1());
    const GridField b = single_peak(g, eps, {0.37 * eps, -0.21 * eps, 0.05 * eps}, p.alpha, p.gamma, w1());
    CHECK(energy(b, eps, one, one, p).total ==
          doctest::Approx(energy(a, eps, one, one, p).total).epsilon(1e-3));
  }
  SUBCASE("decoupled energies add") {
    const CoupledParams q = classify(1, 2, 0);
    const PotentialModel P{1, 2}, Q{0.5, 2};
    const GridField f = single_peak(g, eps, {0.3, 0, 0}, 1.0, 0.7, w1());
    GridField fu = f, fv = f;
    std::fill(fu.v.begin(), fu.v.end(), 0.0);
    std::fill(fv.u.begin(), fv.u.end(), 0.0);
    CHECK(energy(f, eps, P, Q, q).total ==
          doctest::Approx(energy(fu, eps, P, Q, q).total + energy(fv, eps, P, Q, q).total));
  }
  SUBCASE("off-centre peak in a trap matches the spherical quadrature") {
    const PotentialModel P{1, 2};
    const GridField f = single_peak(g, eps, {0.3, 0, 0}, p.alpha, p.gamma, w1());
    CHECK(energy(f, eps, P, one, p).total ==
          doctest::Approx(single_peak_energy(eps, 0.3, P, one, p, w1())).epsilon(5e-3));
  }
  CHECK_THROWS_AS(energy(GridField(GridSpec{1, 9}, eps), eps, one, one, p), Error);
}

TEST_CASE("single peak prediction") {
  const CoupledParams p = classify(1, 1, 0.5);
  const PotentialModel flat{0, 2}, P{1, 2};
  const double A = sync_coefficients(p, mom1()).A;
  CHECK(single_peak_prediction(0.1, 0.3, flat, flat, p, mom1()) == doctest::Approx(1e-3 * A));
  CHECK(single_peak_prediction(0.2, 0.3, P, flat, p, mom1()) ==
        doctest::Approx(8 * single_peak_prediction(0.1, 0.3, P, flat, p, mom1())));
  CHECK(single_peak_energy(0.1, 0.3, flat, flat, p, w1()) == doctest::Approx(1e-3 * A).epsilon(1e-9));
}

TEST_CASE("expansion order recovered from the single-peak energy") {
  const CoupledParams p = classify(1, 1, 0.5);
  const PotentialModel P{1, 2}, flat{0, 2};
  const double eps = 0.01, A = sync_coefficients(p, mom1()).A;
  std::vector<double> lx, ly;
  for (int i = 0; i <= 10; ++i) {
    const double r = 0.1 * std::pow(10.0, i / 10.0);
    lx.push_back(std::log(r));
    ly.push_back(std::log(single_peak_energy(eps, r, P, flat, p, w1()) / (eps * eps * eps) - A));
  }
  double mx = 0, my = 0;
  for (std::size_t i = 0; i < lx.size(); ++i) mx += lx[i] / lx.size(), my += ly[i] / ly.size();
  double sxy = 0, sxx = 0;
  for (std::size_t i = 0; i < lx.size(); ++i)
    sxy += (lx[i] - mx) * (ly[i] - my), sxx += (lx[i] - mx) * (lx[i] - mx);
  CHECK(sxy / sxx == doctest::Approx(2.0).epsilon(0.03));
}

TEST_CASE("measured minus predicted single-peak energy shrinks along the predicted radius") {
  const CoupledParams p = classify(1, 1, 0.5);
  const PotentialModel P{1, 2}, flat{0, 2};
  double last = 1e300;
  for (double eps : {0.2, 0.1, 0.05}) {
    const double r = eps * std::log(1 / eps);
    const double gap = (single_peak_energy(eps, r, P, flat, p, w1()) -
                        single_peak_prediction(eps, r, P, flat, p, mom1())) /
                       (eps * eps * eps);
    CHECK(gap < last);
    last = gap;
  }
}

TEST_CASE("pair interaction against an independent cylindrical quadrature") {
  const double eps = 0.1;
  auto w = [](double r) { return w1().evaluate(r); };
  auto w3 = [](double r) { return std::pow(w1().evaluate(r), 3); };
  for (double D : {6.0, 10.0}) {
    const double ref = cylinder_integral(w3, w, D);
    CHECK(pair_interaction(w1(), D * eps, eps).value / (eps * eps * eps) ==
          doctest::Approx(ref).epsilon(1e-4));
  }
  CHECK(pair_interaction(w1(), 0, eps).value == doctest::Approx(1e-3 * mom1().int_w4));
  CHECK_THROWS_AS(pair_interaction(w1(), 0.3 * eps, eps), Error);
}

TEST_CASE("pair interaction decay carries the algebraic 1/D factor") {
  const double eps = 0.05;
  const double C = 4 * std::numbers::pi * std::pow(w1().c0(), 2);
  for (double D : {10.0, 12.0, 14.0, 16.0}) {
    const auto a = pair_interaction(w1(), D * eps, eps);
    const auto b = pair_interaction(w1(), (D + 1) * eps, eps);
    CHECK(b.value / a.value == doctest::Approx(std::exp(-1.0) * D / (D + 1)).epsilon(2e-3));
    CHECK(a.c_hat_algebraic == doctest::Approx(C).epsilon(1e-3));
  }
}

TEST_CASE("cross-species interaction") {
  const RadialProfile U2 = solve_ground_state(2.0);
  const double eps = 0.1;
  auto f = [](double r) { return std::pow(w1().evaluate(r), 2); };
  auto g = [&](double r) { return std::pow(U2.evaluate(r), 2); };
  CHECK(cross_species_interaction(w1(), U2, 8 * eps, eps).value / (eps * eps * eps) ==
        doctest::Approx(cylinder_integral(f, g, 8.0)).epsilon(1e-4));
  CHECK(cross_species_interaction(w1(), U2, 0, eps).value ==
        doctest::Approx(1e-3 * mom1().int_w4 / 2).epsilon(1e-6));
  double last = 1e300, first = 0;
  for (double D : {8.0, 10.0, 12.0, 14.0, 16.0}) {
    const auto c = cross_species_interaction(w1(), U2, D * eps, eps);
    if (first == 0) first = c.normalized_ratio;
    CHECK(c.normalized_ratio < last);
    CHECK(c.value <= (1 + 1e-12) * first * eps * eps * eps * std::exp(-2 * D));
    last = c.normalized_ratio;
  }
}

TEST_CASE("multipeak predictions") {
  const double eps = 0.1, r = 0.4;
  const PotentialModel flat{0, 2}, P{1, 2}, Q{0.5, 2};
  const CoupledParams p0 = classify(1, 2, 0);
  const double C = 7.5;
  const double A = sync_coefficients(p0, mom1()).A;
  const double a2 = p0.alpha * p0.alpha, g2 = p0.gamma * p0.gamma;
  const double expect =
      2 * eps * eps * eps * (A + C * (a2 * a2 + 2 * g2 * g2) / 2 * std::exp(-2 * r / eps));
  CHECK(multipeak_prediction_sync(eps, r, 1, flat, flat, p0, mom1(), C) == doctest::Approx(expect));

  const CoupledParams p = classify(1, 1, 0.5);
  for (int k : {1, 2, 3}) {
    const double total = multipeak_prediction_sync(eps, r, k, P, Q, p, mom1(), C);
    const double single = single_peak_prediction(eps, r, P, Q, p, mom1());
    const double inter = 2 * k * eps * eps * eps * C * p.interaction_weight() *
                         std::exp(-neighbour_distance(k, r) / eps);
    CHECK(total - 2 * k * single == doctest::Approx(inter).epsilon(1e-9));
  }

  const double B = seg_interaction_coefficient(2, 30.0, 1.0);
  const auto s = multipeak_prediction_seg(eps, r, r, 2, P, P, 1, 1, mom1(), mom1(), B, B);
  CHECK(s.B_tilde == s.C_tilde);
  CHECK(s.A_tilde == doctest::Approx(0.5 * mom1().int_w4));
  CHECK(seg_interaction_coefficient(2, 30.0, 2.0) == doctest::Approx(B / 2));
  CHECK(neighbour_count(1) == 1);
  CHECK(neighbour_count(4) == 2);
  CHECK(cross_distance(1, 1.0, 1.0) == doctest::Approx(std::sqrt(2.0)));
}
