#include "nodalvec/reduction.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <mutex>
#include <numbers>
#include <thread>

#include "nodalvec/errors.hpp"

namespace nodalvec {

namespace {

double decay_rate(const ReducedModel& m) {
  return 2 * std::sin(std::numbers::pi / (2 * m.k)) / m.eps;
}

double power_term(double c, double p, double r, int order) {
  if (c == 0) return 0.0;
  switch (order) {
    case 0: return c * std::pow(r, p);
    case 1: return c * p * std::pow(r, p - 1);
    default: return c * p * (p - 1) * std::pow(r, p - 2);
  }
}

}  // namespace

double ReducedModel::value(double r) const {
  return power_term(aB, m, r, 0) + power_term(bC0, n, r, 0) +
         C_int * std::exp(-decay_rate(*this) * r);
}

double ReducedModel::derivative(double r) const {
  const double s = decay_rate(*this);
  return power_term(aB, m, r, 1) + power_term(bC0, n, r, 1) - s * C_int * std::exp(-s * r);
}

double ReducedModel::second_derivative(double r) const {
  const double s = decay_rate(*this);
  return power_term(aB, m, r, 2) + power_term(bC0, n, r, 2) + s * s * C_int * std::exp(-s * r);
}

double predicted_radius(double eps, int k, double m) {
  if (!(eps > 0) || !(eps < 1)) throw Error(ErrorCode::InvalidParam, "eps must lie in (0, 1)");
  if (k < 1) throw Error(ErrorCode::InvalidParam, "k must be at least 1");
  return m / (2 * std::sin(std::numbers::pi / (2 * k))) * eps * std::log(1 / eps);
}

double search_tolerance(std::pair<double, double> interval) {
  return 1e-9 * (interval.second - interval.first);
}

ModelMinimum minimize_model(const ReducedModel& model, std::pair<double, double> interval) {
  auto [lo, hi] = interval;
  if (!(lo > 0) || !(hi > lo)) throw Error(ErrorCode::InvalidParam, "need 0 < low < high");
  if (model.k < 1 || !(model.eps > 0)) throw Error(ErrorCode::InvalidParam, "bad model");

  constexpr int kScan = 512;
  int best = 0;
  double fbest = model.value(lo);
  for (int i = 1; i <= kScan; ++i) {
    const double f = model.value(lo + (hi - lo) * i / kScan);
    if (f < fbest) {
      fbest = f;
      best = i;
    }
  }
  double a = lo + (hi - lo) * std::max(best - 1, 0) / kScan;
  double b = lo + (hi - lo) * std::min(best + 1, kScan) / kScan;

  const double tol = search_tolerance(interval);
  const double phi = (std::sqrt(5.0) - 1) / 2;
  double x1 = b - phi * (b - a), x2 = a + phi * (b - a);
  double f1 = model.value(x1), f2 = model.value(x2);
  while (b - a > tol) {
    if (f1 <= f2) {
      b = x2;
      x2 = x1;
      f2 = f1;
      x1 = b - phi * (b - a);
      f1 = model.value(x1);
    } else {
      a = x1;
      x1 = x2;
      f1 = f2;
      x2 = a + phi * (b - a);
      f2 = model.value(x2);
    }
  }
  double r = 0.5 * (a + b);

  // Newton on f' kept inside the scan cell; golden section has already put us in the
  // quadratic basin, so this only polishes the last digits.
  const double cell_lo = std::max(lo, r - (hi - lo) / kScan), cell_hi = std::min(hi, r + (hi - lo) / kScan);
  for (int it = 0; it < 50; ++it) {
    const double d1 = model.derivative(r), d2 = model.second_derivative(r);
    if (!(d2 > 0)) break;
    const double next = std::clamp(r - d1 / d2, cell_lo, cell_hi);
    if (std::abs(next - r) <= 1e-16 * r) {
      r = next;
      break;
    }
    r = next;
  }

  const bool interior = r - lo >= tol && hi - r >= tol;
  if (!interior)
    throw Error(ErrorCode::NoInteriorMin, "model minimum sits at the interval boundary r = " +
                                              std::to_string(r));
  return {r, model.value(r), true};
}

SegregatedMinimum minimize_segregated(const ReducedModel& model_r, const ReducedModel& model_rho,
                                      std::pair<double, double> box_r,
                                      std::pair<double, double> box_rho,
                                      double cross_coefficient) {
  if (!(model_r.aB > 0) || !(model_rho.bC0 > 0 || model_rho.aB > 0))
    throw Error(ErrorCode::InvalidParam, "segregated factors need a > 0 and b > 0");
  const ModelMinimum mr = minimize_model(model_r, box_r);
  const ModelMinimum mrho = minimize_model(model_rho, box_rho);
  SegregatedMinimum s{};
  s.r1 = mr.r_star;
  s.rho1 = mrho.r_star;
  s.value = mr.f_star + mrho.f_star;
  s.interior = mr.interior && mrho.interior;
  const double t = std::numbers::pi / (2 * model_r.k);
  const double dxy = std::hypot(s.rho1 - s.r1 * std::cos(t), s.r1 * std::sin(t));
  s.cross_term = cross_coefficient * std::exp(-2 * dxy / model_r.eps);
  s.retained_exp = model_r.C_int * std::exp(-decay_rate(model_r) * s.r1) +
                   model_rho.C_int * std::exp(-decay_rate(model_rho) * s.rho1);
  s.cross_ratio = s.cross_term / s.retained_exp;
  return s;
}

Landscape measured_landscape(double eps, int k, double m, const std::vector<double>& r_samples,
                             const std::function<double(double)>& measure, int workers) {
  if (r_samples.empty()) throw Error(ErrorCode::InvalidParam, "no landscape samples");
  Landscape L;
  L.rows.resize(r_samples.size());
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  auto work = [&] {
    for (std::size_t i = next++; i < r_samples.size(); i = next++) {
      try {
        L.rows[i] = {r_samples[i], measure(r_samples[i])};
      } catch (...) {
        std::lock_guard lock(failure_mutex);
        if (!failure) failure = std::current_exception();
      }
    }
  };
  const int n_threads = std::clamp(workers, 1, static_cast<int>(r_samples.size()));
  if (n_threads == 1) {
    work();
  } else {
    std::vector<std::thread> pool;
    for (int t = 0; t < n_threads; ++t) pool.emplace_back(work);
    for (auto& t : pool) t.join();
  }
  if (failure) std::rethrow_exception(failure);

  std::size_t best = 0;
  for (std::size_t i = 1; i < L.rows.size(); ++i) {
    const auto& row = L.rows[i];
    const auto& cur = L.rows[best];
    if (row.measured < cur.measured || (row.measured == cur.measured && row.r < cur.r)) best = i;
  }
  L.argmin = best;
  L.r_min = L.rows[best].r;
  L.predicted = predicted_radius(eps, k, m);
  L.ratio = L.r_min / L.predicted;
  return L;
}

}  // namespace nodalvec
