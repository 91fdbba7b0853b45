#include <doctest.h>

#include <cmath>
#include <random>
#include <vector>

#include "nodalvec/coupled.hpp"
#include "nodalvec/errors.hpp"

using namespace nodalvec;

namespace {

const RadialProfile& w1() {
  static const RadialProfile p = solve_ground_state(1.0);
  return p;
}

std::vector<double> sample_radii() {
  std::vector<double> r;
  for (int i = 0; i <= 200; ++i) r.push_back(0.1 * i);
  return r;
}

}  // namespace

TEST_CASE("decoupled unit case") {
  const CoupledParams p = classify(1, 1, 0);
  CHECK(p.alpha == doctest::Approx(1.0));
  CHECK(p.gamma == doctest::Approx(1.0));
  CHECK(p.regime == Regime::AttractiveSync);
  const auto r = sample_radii();
  CHECK(synchronized_residual(p, w1(), r) < 1e-7);
}

TEST_CASE("synchronized residuals across regimes") {
  const auto r = sample_radii();
  for (auto [m1, m2, b] : std::vector<std::array<double, 3>>{{1, 1, 0.5}, {2, 3, 1}, {1, 1, 0.9},
                                                              {1, 2, -0.8}, {1, 1, 3}}) {
    const CoupledParams p = classify(m1, m2, b);
    REQUIRE(p.has_amplitudes());
    CHECK(synchronized_residual(p, w1(), r) < 1e-6);
  }
  const CoupledParams half = classify(1, 1, 0.5);
  CHECK(half.alpha == doctest::Approx(half.gamma));
}

TEST_CASE("singular coupling") {
  CHECK_THROWS_WITH_AS(classify(1, 4, -2), doctest::Contains("SingularBeta"), Error);
  CHECK_THROWS_AS(classify(1, 4, 2), Error);
}

TEST_CASE("regimes") {
  CHECK(classify(1, 1, -0.5).regime == Regime::RepulsiveSync);
  CHECK(classify(1, 1, 2).regime == Regime::LargeBetaSync);
  CHECK(classify(1, 2, 1.5).regime == Regime::Invalid);
  CHECK(classify(1, 1, -3).regime == Regime::SegregatedOnly);
  CHECK_THROWS_AS(synchronized_residual(classify(1, 1, -3), w1(), sample_radii()), Error);
}

TEST_CASE("amplitude identities on random admissible triples") {
  std::mt19937_64 rng(2024);
  std::uniform_real_distribution<double> mu(0.2, 5.0), unit(-1.0, 1.0);
  int tested = 0;
  while (tested < 1000) {
    const double m1 = mu(rng), m2 = mu(rng);
    const double beta = 3 * std::sqrt(m1 * m2) * unit(rng);
    if (std::abs(beta * beta - m1 * m2) < 0.05 * m1 * m2) continue;
    const CoupledParams p = classify(m1, m2, beta);
    if (!p.has_amplitudes()) continue;
    const double a2 = p.alpha * p.alpha, g2 = p.gamma * p.gamma;
    CHECK(std::abs(m1 * a2 + beta * g2 - 1) < 1e-12);
    CHECK(std::abs(m2 * g2 + beta * a2 - 1) < 1e-12);
    ++tested;
  }
}

TEST_CASE("swapping mu1 and mu2 swaps the amplitudes") {
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> mu(0.3, 4.0), b(-0.9, 0.2);
  for (int i = 0; i < 200; ++i) {
    const double m1 = mu(rng), m2 = mu(rng), beta = b(rng) * std::min(m1, m2);
    const CoupledParams p = classify(m1, m2, beta), q = classify(m2, m1, beta);
    CHECK(p.alpha == doctest::Approx(q.gamma).epsilon(1e-14));
    CHECK(p.gamma == doctest::Approx(q.alpha).epsilon(1e-14));
  }
}

TEST_CASE("vanishing coupling limit") {
  for (double beta : {1e-4, -1e-6, 1e-8}) {
    const CoupledParams p = classify(2, 5, beta);
    CHECK(p.alpha == doctest::Approx(1 / std::sqrt(2.0)).epsilon(10 * std::abs(beta)));
    CHECK(p.gamma == doctest::Approx(1 / std::sqrt(5.0)).epsilon(10 * std::abs(beta)));
  }
}

TEST_CASE("interaction and quartic weights") {
  const CoupledParams p = classify(2, 3, 1);
  const double a2 = p.alpha * p.alpha, g2 = p.gamma * p.gamma;
  CHECK(p.interaction_weight() == doctest::Approx(a2 * a2 + 1.5 * g2 * g2 + a2 * g2));
  CHECK(p.quartic_weight() == doctest::Approx(0.25 * (2 * a2 * a2 + 3 * g2 * g2 + 2 * a2 * g2)));
}
