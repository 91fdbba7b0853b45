#include "nodalvec/experiment.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <map>
#include <mutex>
#include <numbers>
#include <set>
#include <sstream>
#include <thread>

#include <boost/property_tree/ini_parser.hpp>
#include <boost/property_tree/ptree.hpp>
#include <nlohmann/json.hpp>

#include "nodalvec/ansatz.hpp"
#include "nodalvec/coupled.hpp"
#include "nodalvec/errors.hpp"
#include "nodalvec/reduction.hpp"
#include "nodalvec/solver.hpp"

namespace nodalvec {

namespace pt = boost::property_tree;
using json = nlohmann::ordered_json;

namespace {

std::string fmt(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

std::vector<double> parse_list(const std::string& text) {
  std::vector<double> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    item.erase(0, item.find_first_not_of(" \t"));
    item.erase(item.find_last_not_of(" \t") + 1);
    if (item.empty()) continue;
    try {
      std::size_t used = 0;
      out.push_back(std::stod(item, &used));
      if (used != item.size()) throw std::invalid_argument(item);
    } catch (const std::exception&) {
      throw Error(ErrorCode::ConfigInvalid, "not a number: '" + item + "'");
    }
  }
  return out;
}

const std::map<std::string, std::set<std::string>>& known_keys() {
  static const std::map<std::string, std::set<std::string>> keys{
      {"system", {"mode", "mu1", "mu2", "beta", "k", "beta_guard"}},
      {"potential_p", {"a", "m", "theta", "c_hot"}},
      {"potential_q", {"b", "n", "delta", "c_hot"}},
      {"sweep", {"eps", "delta"}},
      {"landscape", {"samples", "resolution", "margin"}},
      {"solver",
       {"enabled", "margin", "resolution", "max_n", "tol", "max_iters", "threshold_fraction",
        "fallback_eps"}},
      {"output", {"dir"}},
  };
  return keys;
}

json nullable(const std::optional<double>& x) { return x ? json(*x) : json(nullptr); }

// Least-squares slope of log y against log x over the positive pairs.
std::optional<double> loglog_slope(const std::vector<double>& x, const std::vector<double>& y) {
  std::vector<double> lx, ly;
  for (std::size_t i = 0; i < x.size(); ++i)
    if (x[i] > 0 && y[i] > 0) {
      lx.push_back(std::log(x[i]));
      ly.push_back(std::log(y[i]));
    }
  if (lx.size() < 2) return std::nullopt;
  const double n = static_cast<double>(lx.size());
  double mx = 0, my = 0;
  for (std::size_t i = 0; i < lx.size(); ++i) mx += lx[i], my += ly[i];
  mx /= n;
  my /= n;
  double sxy = 0, sxx = 0;
  for (std::size_t i = 0; i < lx.size(); ++i) {
    sxy += (lx[i] - mx) * (ly[i] - my);
    sxx += (lx[i] - mx) * (lx[i] - mx);
  }
  return sxy / sxx;
}

std::mutex log_mutex;
void log_line(const std::string& s) {
  std::lock_guard lock(log_mutex);
  std::cerr << s << std::endl;
}

// Profiles and moments shared by every sweep point.
struct Shared {
  RadialProfile w, U1, U2;
  Moments mom_w, mom1, mom2;
  CoupledParams params;
};

struct Point {
  const ExperimentConfig& cfg;
  const Shared& sh;
  double eps;
  std::filesystem::path dir;
  int workers;
  bool resume;

  double m_min() const { return std::min(cfg.P.m, cfg.n()); }
  bool sync() const { return cfg.mode == ExperimentMode::Sync; }

  GridField build(double e, double r, const GridSpec& grid, double min_margin) const {
    if (sync()) return build_synchronized(make_configuration(cfg.k, r, e), sh.params, sh.w, grid,
                                          min_margin);
    return build_segregated(make_configuration(cfg.k, r, e, r), sh.U1, sh.U2, grid, min_margin);
  }

  json newton_stage(double e, double r0) const {
    const std::filesystem::path ndir = dir / "newton";
    json out;
    out["eps"] = e;
    out["r_initial"] = r0;
    const double L = r0 + cfg.solver_margin * e;
    GridSpec grid = grid_for(L, e / cfg.solver_resolution);
    grid.n = std::min(grid.n, cfg.max_n);
    out["grid_n"] = grid.n;
    out["grid_half_width"] = grid.half_width;
    const GridField ansatz = build(e, r0, grid, cfg.solver_margin - 0.5);
    {
      std::filesystem::create_directories(ndir);
      std::ofstream os(ndir / "ansatz_slice.csv");
      ansatz.write_slice_csv(os);
    }

    SolveReport rep;
    GridField sol(grid, e);
    bool reused = false;
    if (resume && std::filesystem::exists(ndir / "report.json") &&
        std::filesystem::exists(ndir / "field.txt")) {
      std::ifstream js(ndir / "report.json");
      const json stored = json::parse(js);
      if (stored.value("converged", false)) {
        sol = read_checkpoint_field(ndir);
        if (sol.grid == grid) {
          rep.converged = true;
          reused = true;
          out["report"] = stored;
        }
      }
    }
    if (!reused) {
      NewtonOptions o;
      o.k = cfg.k;
      o.mode = sync() ? SolveMode::Synchronized : SolveMode::Segregated;
      o.tol = cfg.newton_tol;
      o.max_iters = cfg.max_iters;
      o.threshold_fraction = cfg.threshold_fraction;
      const SystemCoefficients c{cfg.mu1, cfg.mu2, cfg.beta};
      log_line(point_directory(cfg.mode, eps) + ": Newton on n = " + std::to_string(grid.n) +
               (e != eps ? " at fallback " + point_directory(cfg.mode, e) : ""));
      auto [s, r] = newton_solve(ansatz, e, cfg.P, cfg.Q, c, o);
      sol = std::move(s);
      rep = std::move(r);
      write_checkpoint(ndir, sol, rep);
      out["report"] = json::parse(report_json(rep));
    }
    std::ofstream os(ndir / "solution_slice.csv");
    sol.write_slice_csv(os);
    const json& rj = out["report"];
    const double cn = rj["correction_norm_eps"].get<double>();
    const double an = rj["ansatz_norm_eps"].get<double>();
    out["converged"] = rj["converged"];
    out["final_residual"] = rj["residual_history"].back();
    out["correction_ratio"] = an > 0 ? json(cn / an) : json(nullptr);
    return out;
  }

  // Fills `p` in place so a failure part way keeps what was already computed.
  void run(json& p) const {
    p["mode"] = to_string(cfg.mode);
    p["eps"] = eps;
    p["k"] = cfg.k;
    p["regime"] = std::string(to_string(sh.params.regime));
    const double mm = m_min();
    const double delta = cfg.delta.value_or(default_delta(cfg.P.m, cfg.n()));
    const double r_pred = predicted_radius(eps, cfg.k, mm);
    const auto S = admissible_interval(eps, cfg.k, cfg.P.m, cfg.n(), delta);
    p["delta"] = delta;
    p["predicted_radius"] = r_pred;
    p["interval"] = {S.first, S.second};

    // Analytic model with the interaction constant measured at the predicted chord.
    // c_hat carries a 1/D prefactor; the product c_hat D is measured where the
    // quadrature is valid and divided by the predicted D.
    const double D = neighbour_distance(cfg.k, r_pred) / eps;
    const double c_hat = pair_interaction(sh.w, std::max(D, 4.0) * eps, eps).c_hat_algebraic / D;
    p["c_hat"] = c_hat;
    std::optional<double> r_star, rho_star, scaled, cross_ratio;
    std::optional<bool> interior;
    std::function<double(double)> model_total;
    const double scale = 2 * std::sin(std::numbers::pi / (2 * cfg.k)) / (eps * std::log(1 / eps));
    if (sync()) {
      const auto co = sync_coefficients(sh.params, sh.mom_w);
      ReducedModel f;
      f.aB = cfg.P.a * co.B;
      f.bC0 = cfg.b() * co.C0;
      f.C_int = sync_interaction_coefficient(cfg.k, c_hat) * sh.params.interaction_weight();
      f.m = cfg.P.m;
      f.n = cfg.n();
      f.k = cfg.k;
      f.eps = eps;
      const double C = sync_interaction_coefficient(cfg.k, c_hat);
      model_total = [&, C](double r) {
        return multipeak_prediction_sync(eps, r, cfg.k, cfg.P, cfg.Q, sh.params, sh.mom_w, C);
      };
      try {
        const ModelMinimum mm_ = minimize_model(f, S);
        r_star = mm_.r_star;
        interior = mm_.interior;
        scaled = mm_.r_star * scale;
      } catch (const Error& e) {
        if (e.code() != ErrorCode::NoInteriorMin) throw;
        interior = false;
      }
    } else {
      const double B1 = seg_interaction_coefficient(cfg.k, c_hat, cfg.mu1);
      const double B2 = seg_interaction_coefficient(cfg.k, c_hat, cfg.mu2);
      const auto pred = multipeak_prediction_seg(eps, r_pred, r_pred, cfg.k, cfg.P, cfg.Q,
                                                 cfg.mu1, cfg.mu2, sh.mom1, sh.mom2, B1, B2);
      ReducedModel fr, frho;
      fr.aB = cfg.P.a * pred.B_tilde;
      fr.bC0 = 0;
      fr.C_int = B1;
      fr.m = cfg.P.m;
      fr.n = cfg.n();
      fr.k = cfg.k;
      fr.eps = eps;
      fr.mode = ReducedMode::SegregatedR;
      frho = fr;
      frho.aB = 0;
      frho.bC0 = cfg.b() * pred.C_tilde;
      frho.C_int = B2;
      frho.mode = ReducedMode::SegregatedRho;
      model_total = [&, B1, B2](double r) {
        return multipeak_prediction_seg(eps, r, r, cfg.k, cfg.P, cfg.Q, cfg.mu1, cfg.mu2,
                                        sh.mom1, sh.mom2, B1, B2)
            .total;
      };
      try {
        const SegregatedMinimum sm = minimize_segregated(fr, frho, S, S);
        r_star = sm.r1;
        rho_star = sm.rho1;
        interior = sm.interior;
        scaled = sm.r1 * scale;
        cross_ratio = sm.cross_ratio;
      } catch (const Error& e) {
        if (e.code() != ErrorCode::NoInteriorMin) throw;
        interior = false;
      }
    }
    p["model"] = {{"r_star", nullable(r_star)},
                  {"rho_star", nullable(rho_star)},
                  {"interior", interior ? json(*interior) : json(nullptr)},
                  {"scaled_minimizer", nullable(scaled)},
                  {"cross_ratio", nullable(cross_ratio)}};

    // Single-peak expansion slope over one decade around the predicted radius.
    {
      std::vector<double> rs, ys;
      double A;
      if (sync()) {
        A = sync_coefficients(sh.params, sh.mom_w).A;
      } else {
        A = 0.25 * cfg.mu1 * sh.mom1.int_w4;
      }
      for (int i = 0; i < 7; ++i) {
        const double r = r_pred * std::pow(10.0, -0.5 + i / 6.0);
        const double I = sync() ? single_peak_energy(eps, r, cfg.P, cfg.Q, sh.params, sh.w)
                                : single_species_peak_energy(eps, r, cfg.P, cfg.mu1, sh.U1);
        rs.push_back(r);
        ys.push_back(I / (eps * eps * eps) - A);
      }
      p["expansion_slope"] = nullable(loglog_slope(rs, ys));
    }

    // Measured landscape: grid quadrature of the ansatz energy on one fixed grid.
    std::optional<double> land_min, land_ratio;
    if (cfg.landscape_samples > 0) {
      const double width = S.second - S.first;
      const double lo = std::max(S.first - 0.5 * width, 0.5 * S.first);
      const double hi = S.second + 0.5 * width;
      std::vector<double> samples;
      const int ns = cfg.landscape_samples;
      for (int i = 0; i < ns; ++i)
        samples.push_back(ns == 1 ? 0.5 * (lo + hi) : lo + (hi - lo) * i / (ns - 1));
      const GridSpec grid = grid_for(hi + cfg.landscape_margin * eps, eps / cfg.landscape_resolution);
      const CoupledParams cp = sync() ? sh.params : classify(cfg.mu1, cfg.mu2, cfg.beta);
      auto measure = [&](double r) {
        const GridField f = build(eps, r, grid, cfg.landscape_margin - 0.5);
        return energy(f, eps, cfg.P, cfg.Q, cp).total;
      };
      log_line(point_directory(cfg.mode, eps) + ": landscape on n = " + std::to_string(grid.n));
      const Landscape L = measured_landscape(eps, cfg.k, mm, samples, measure, workers);
      land_min = L.r_min;
      land_ratio = L.ratio;
      std::ofstream os(dir / "landscape.csv");
      os << "r,measured,model,in_window\n";
      for (const auto& row : L.rows)
        os << fmt(row.r) << ',' << fmt(row.measured) << ',' << fmt(model_total(row.r)) << ','
           << (row.r >= S.first && row.r <= S.second ? 1 : 0) << '\n';
      p["landscape"] = {{"samples", ns},
                        {"grid_n", grid.n},
                        {"r_min", L.r_min},
                        {"ratio_to_predicted", L.ratio}};
    }

    if (cfg.newton) {
      const double r0 = land_min.value_or(r_star.value_or(r_pred));
      json nw = newton_stage(eps, r0);
      if (!nw["converged"].get<bool>() && cfg.fallback_eps && *cfg.fallback_eps != eps) {
        const double e2 = *cfg.fallback_eps;
        const double r2 = predicted_radius(e2, cfg.k, mm) * (r0 / r_pred);
        json fb = newton_stage(e2, r2);
        fb["first_attempt"] = std::move(nw);
        nw = std::move(fb);
      }
      p["newton"] = std::move(nw);
    }
  }
};

json run_point(const Point& pt) {
  std::filesystem::create_directories(pt.dir);
  const auto done = pt.dir / "point.json";
  if (pt.resume && std::filesystem::exists(done)) {
    std::ifstream is(done);
    return json::parse(is);
  }
  json p;
  for (const char* key : {"mode", "eps", "k", "regime", "delta", "predicted_radius", "interval",
                          "c_hat", "model", "expansion_slope", "landscape", "newton", "error"})
    p[key] = nullptr;
  try {
    pt.run(p);
  } catch (const std::exception& e) {
    p["mode"] = to_string(pt.cfg.mode);
    p["eps"] = pt.eps;
    p["k"] = pt.cfg.k;
    p["error"] = e.what();
    log_line(point_directory(pt.cfg.mode, pt.eps) + ": " + e.what());
    return p;
  }
  std::ofstream os(done);
  os << p.dump(2) << "\n";
  return p;
}

}  // namespace

std::string to_string(ExperimentMode mode) { return mode == ExperimentMode::Sync ? "sync" : "seg"; }

ExperimentConfig ExperimentConfig::parse(const std::string& text) {
  pt::ptree tree;
  try {
    std::istringstream is(text);
    pt::read_ini(is, tree);
  } catch (const pt::ini_parser_error& e) {
    throw Error(ErrorCode::ConfigInvalid, e.what());
  }
  const auto& keys = known_keys();
  for (const auto& [section, body] : tree) {
    auto it = keys.find(section);
    if (it == keys.end()) throw Error(ErrorCode::ConfigInvalid, "unknown section [" + section + "]");
    for (const auto& [key, value] : body)
      if (!it->second.count(key))
        throw Error(ErrorCode::ConfigInvalid, "unknown key " + section + "." + key);
  }

  ExperimentConfig c;
  auto num = [&](const char* path, double& dst) {
    if (auto v = tree.get_optional<std::string>(path)) {
      const auto xs = parse_list(*v);
      if (xs.size() != 1) throw Error(ErrorCode::ConfigInvalid, std::string(path) + " needs one value");
      dst = xs[0];
    }
  };
  auto integer = [&](const char* path, int& dst) {
    double x = dst;
    num(path, x);
    if (x != std::floor(x)) throw Error(ErrorCode::ConfigInvalid, std::string(path) + " must be an integer");
    dst = static_cast<int>(x);
  };

  if (auto mode = tree.get_optional<std::string>("system.mode")) {
    if (*mode == "sync") c.mode = ExperimentMode::Sync;
    else if (*mode == "seg") c.mode = ExperimentMode::Seg;
    else throw Error(ErrorCode::ConfigInvalid, "system.mode must be sync or seg");
  }
  num("system.mu1", c.mu1);
  num("system.mu2", c.mu2);
  num("system.beta", c.beta);
  integer("system.k", c.k);
  num("system.beta_guard", c.beta_guard);
  num("potential_p.a", c.P.a);
  num("potential_p.m", c.P.m);
  num("potential_p.theta", c.P.theta);
  num("potential_p.c_hot", c.P.c_hot);
  num("potential_q.b", c.Q.a);
  num("potential_q.n", c.Q.m);
  num("potential_q.delta", c.Q.theta);
  num("potential_q.c_hot", c.Q.c_hot);
  if (auto v = tree.get_optional<std::string>("sweep.eps")) c.eps_list = parse_list(*v);
  if (tree.get_optional<std::string>("sweep.delta")) {
    double d = 0;
    num("sweep.delta", d);
    c.delta = d;
  }
  integer("landscape.samples", c.landscape_samples);
  num("landscape.resolution", c.landscape_resolution);
  num("landscape.margin", c.landscape_margin);
  if (auto v = tree.get_optional<std::string>("solver.enabled")) {
    if (*v == "true" || *v == "1") c.newton = true;
    else if (*v == "false" || *v == "0") c.newton = false;
    else throw Error(ErrorCode::ConfigInvalid, "solver.enabled must be true or false");
  }
  num("solver.margin", c.solver_margin);
  num("solver.resolution", c.solver_resolution);
  integer("solver.max_n", c.max_n);
  num("solver.tol", c.newton_tol);
  integer("solver.max_iters", c.max_iters);
  num("solver.threshold_fraction", c.threshold_fraction);
  if (tree.get_optional<std::string>("solver.fallback_eps")) {
    double f = 0;
    num("solver.fallback_eps", f);
    c.fallback_eps = f;
  }
  if (auto v = tree.get_optional<std::string>("output.dir")) c.output_dir = *v;
  return c;
}

ExperimentConfig ExperimentConfig::load(const std::filesystem::path& path) {
  std::ifstream is(path);
  if (!is) throw Error(ErrorCode::Io, "cannot read config " + path.string());
  std::stringstream ss;
  ss << is.rdbuf();
  return parse(ss.str());
}

std::vector<Diagnostic> validate(const ExperimentConfig& c) {
  std::vector<Diagnostic> out;
  auto error = [&](std::string cond, std::string msg) {
    out.push_back({Diagnostic::Severity::Error, std::move(cond), std::move(msg)});
  };
  auto warn = [&](std::string cond, std::string msg) {
    out.push_back({Diagnostic::Severity::Warning, std::move(cond), std::move(msg)});
  };
  const double a = c.P.a, b = c.b(), m = c.P.m, n = c.n();

  if (c.k < 1) error("k", "k must be a positive integer");
  if (c.eps_list.empty()) error("eps", "sweep.eps is empty");
  for (double e : c.eps_list)
    if (!(e > 0 && e < 1)) error("eps", "eps = " + fmt(e) + " is outside (0, 1)");
  if (c.fallback_eps && !(*c.fallback_eps > 0 && *c.fallback_eps < 1))
    error("eps", "solver.fallback_eps is outside (0, 1)");
  if (!(c.mu1 > 0) || !(c.mu2 > 0)) error("mu", "mu1 and mu2 must be positive");
  if (!(m > 1)) error("trap exponent P", "the trap exponent m must exceed 1");
  if (!(n > 1)) error("trap exponent Q", "the trap exponent n must exceed 1");
  if (!(c.P.theta > 0)) error("trap exponent P", "the remainder exponent theta must be positive");
  if (!(c.Q.theta > 0)) error("trap exponent Q", "the remainder exponent delta must be positive");
  if (c.delta && !(*c.delta > 0 && *c.delta < std::min(m, n)))
    error("window", "sweep.delta must lie in (0, min(m, n))");
  if (c.landscape_samples < 0) error("landscape", "landscape.samples must be nonnegative");
  if (c.landscape_samples > 0 && c.landscape_resolution < 4)
    error("resolution", "landscape.resolution below 4 violates h <= eps/4");
  if (c.solver_resolution < 4) error("resolution", "solver.resolution below 4 violates h <= eps/4");
  if (c.landscape_margin < 6 || c.solver_margin < 6)
    error("box", "margins below 6 eps truncate the peaks");
  if (c.max_n < 5) error("resolution", "solver.max_n must be at least 5");
  if (!out.empty() && out.back().severity == Diagnostic::Severity::Error &&
      (!(c.mu1 > 0) || !(c.mu2 > 0)))
    return out;

  const double prod = c.mu1 * c.mu2;
  if (std::abs(c.beta * c.beta - prod) <= 0.05 * prod)
    warn("amplitude blow-up", "beta^2 is within 5% of mu1 mu2; the amplitudes blow up there");

  if (c.mode == ExperimentMode::Sync) {
    const CoupledParams cp = classify(c.mu1, c.mu2, c.beta);
    if (!cp.has_amplitudes()) {
      error("synchronized regime", "beta = " + fmt(c.beta) + " admits no synchronized amplitudes (" +
                                       std::string(to_string(cp.regime)) + ")");
    } else {
      if (c.beta == 0)
        warn("decoupled limit", "beta = 0 decouples the equations; coupling tests are vacuous");
      else if (c.beta >= std::min(c.mu1, c.mu2) && c.beta <= std::max(c.mu1, c.mu2))
        error("coupling range", "beta must avoid [min(mu1, mu2), max(mu1, mu2)]");
      if (m < n && !(a > 0))
        error("sync condition (1)", "m < n requires a > 0 (a = " + fmt(a) + ")");
      if (m > n && !(b > 0))
        error("sync condition (1)", "m > n requires b > 0 (b = " + fmt(b) + ")");
      if (m == n) {
        const Moments mom = moments(solve_ground_state(1.0));
        const auto co = sync_coefficients(cp, mom);
        const double s = a * co.B + b * co.C0;
        if (!(s > 0))
          error("sync condition (2)",
                "m = n requires aB + bC0 > 0 (computed " + fmt(s) + ")");
      }
    }
  } else {
    if (m != n) error("segregated hypotheses", "segregated mode requires m = n");
    if (!(a > 0)) error("segregated hypotheses", "segregated mode requires a > 0");
    if (!(b > 0)) error("segregated hypotheses", "segregated mode requires b > 0");
    if (!(c.beta < c.beta_guard))
      error("segregated coupling cap",
            "beta = " + fmt(c.beta) + " is not below beta_guard = " + fmt(c.beta_guard));
    if (c.beta > 0 && c.beta >= 0.5 * c.beta_guard)
      warn("segregated coupling cap", "beta is close to the guard; segregation may fail");
  }

  if (a < 0 || b < 0) warn("trap sign", "a negative trap coefficient can make P or Q vanish on a large box");

  for (double e : c.eps_list) {
    if (!(e > 0 && e < 1)) continue;
    const double r = predicted_radius(e, std::max(c.k, 1), std::min(m, n));
    const GridSpec g = grid_for(r + c.solver_margin * e, e / std::max(c.solver_resolution, 1.0));
    if (c.newton && g.n > c.max_n)
      warn("grid cap", "eps = " + fmt(e) + " needs n = " + std::to_string(g.n) +
                           " > max_n; the solve will report ResolutionTooCoarse if h > eps/4");
  }
  return out;
}

void require_valid(const ExperimentConfig& config) {
  for (const auto& d : validate(config))
    if (d.severity == Diagnostic::Severity::Error)
      throw Error(ErrorCode::ConfigInvalid, d.condition + ": " + d.message);
}

std::string point_directory(ExperimentMode mode, double eps) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%s_eps%.6g", to_string(mode).c_str(), eps);
  return buf;
}

std::string run_experiment(const ExperimentConfig& config, const RunOptions& options) {
  require_valid(config);
  const std::filesystem::path out = options.output_dir.value_or(config.output_dir);
  std::filesystem::create_directories(out);

  const RadialProfile w = solve_ground_state(1.0);
  const RadialProfile U1 = config.mode == ExperimentMode::Seg ? solve_ground_state(config.mu1) : w;
  const RadialProfile U2 = config.mode == ExperimentMode::Seg ? solve_ground_state(config.mu2) : w;
  Shared sh{w, U1, U2, moments(w), moments(U1), moments(U2),
            classify(config.mu1, config.mu2, config.beta)};
  {
    std::ofstream os(out / "profile_w.txt");
    w.save(os);
    if (config.mode == ExperimentMode::Seg) {
      std::ofstream o1(out / "profile_u1.txt");
      U1.save(o1);
      std::ofstream o2(out / "profile_u2.txt");
      U2.save(o2);
    }
  }

  std::vector<double> eps = config.eps_list;
  const std::size_t np = eps.size();
  const int pool = std::clamp(options.workers, 1, static_cast<int>(np));
  const int inner = std::max(1, options.workers / pool);
  std::vector<json> points(np);
  std::atomic<std::size_t> next{0};
  auto work = [&] {
    for (std::size_t i; (i = next++) < np;) {
      Point p{config, sh, eps[i], out / point_directory(config.mode, eps[i]), inner,
              options.resume};
      points[i] = run_point(p);
    }
  };
  if (pool == 1) {
    work();
  } else {
    std::vector<std::thread> threads;
    for (int t = 0; t < pool; ++t) threads.emplace_back(work);
    for (auto& t : threads) t.join();
  }

  json summary;
  summary["mode"] = to_string(config.mode);
  summary["k"] = config.k;
  summary["mu1"] = config.mu1;
  summary["mu2"] = config.mu2;
  summary["beta"] = config.beta;
  summary["P"] = {{"a", config.P.a}, {"m", config.P.m}, {"theta", config.P.theta}, {"c_hot", config.P.c_hot}};
  summary["Q"] = {{"b", config.Q.a}, {"n", config.Q.m}, {"delta", config.Q.theta}, {"c_hot", config.Q.c_hot}};
  summary["ground_state"] = {{"u0", w.center_value()}, {"c0", w.c0()}};
  summary["points"] = points;

  // Trends across converged solves, ordered by decreasing eps.
  struct Solved {
    double eps, correction, gap;
  };
  std::vector<Solved> solved;
  for (const auto& p : points) {
    if (!p.contains("newton") || p["newton"].is_null()) continue;
    const auto& nw = p["newton"];
    if (!nw["converged"].get<bool>()) continue;
    solved.push_back({nw["eps"].get<double>(), nw["report"]["correction_norm_eps"].get<double>(),
                      nw["report"]["profile_gap_sup"].get<double>()});
  }
  std::sort(solved.begin(), solved.end(), [](auto& x, auto& y) { return x.eps > y.eps; });
  json exps = json::array();
  std::optional<bool> gap_decreasing;
  for (std::size_t i = 1; i < solved.size(); ++i) {
    if (solved[i].eps == solved[i - 1].eps) continue;
    exps.push_back(std::log(solved[i - 1].correction / solved[i].correction) /
                   std::log(solved[i - 1].eps / solved[i].eps));
    const bool dec = solved[i].gap < solved[i - 1].gap;
    gap_decreasing = gap_decreasing.value_or(true) && dec;
  }
  summary["correction_exponents"] = exps;
  summary["expected_exponent"] = (3 + std::min(config.P.m, config.n())) / 2;
  summary["gap_decreasing"] = gap_decreasing ? json(*gap_decreasing) : json(nullptr);

  const std::string text = summary.dump(2) + "\n";
  std::ofstream os(out / "summary.json");
  if (!os) throw Error(ErrorCode::Io, "cannot write summary.json");
  os << text;
  return text;
}

std::vector<std::filesystem::path> write_plot_data(const std::filesystem::path& dir) {
  if (!std::filesystem::exists(dir / "summary.json"))
    throw Error(ErrorCode::Io, "no summary.json under " + dir.string());
  std::ifstream is(dir / "summary.json");
  const json summary = json::parse(is);
  const std::filesystem::path plot = dir / "plot";
  std::filesystem::create_directories(plot);
  std::vector<std::filesystem::path> written;

  const auto landscapes = plot / "landscapes.csv";
  std::ofstream land(landscapes);
  land << "mode,eps,r,measured,model,in_window\n";
  const auto gs = plot / "newton.csv";
  std::ofstream nw(gs);
  nw << "mode,eps,iteration,residual\n";

  for (const auto& p : summary["points"]) {
    const std::string mode = p["mode"].get<std::string>();
    const double eps = p["eps"].get<double>();
    const auto pdir = dir / point_directory(mode == "sync" ? ExperimentMode::Sync : ExperimentMode::Seg, eps);
    if (std::ifstream ls(pdir / "landscape.csv"); ls) {
      std::string line;
      std::getline(ls, line);
      while (std::getline(ls, line)) land << mode << ',' << fmt(eps) << ',' << line << '\n';
    }
    if (p.contains("newton") && !p["newton"].is_null()) {
      const auto& hist = p["newton"]["report"]["residual_history"];
      for (std::size_t i = 0; i < hist.size(); ++i)
        nw << mode << ',' << fmt(p["newton"]["eps"].get<double>()) << ',' << i << ','
           << fmt(hist[i].get<double>()) << '\n';
      for (const char* name : {"ansatz_slice.csv", "solution_slice.csv"}) {
        const auto src = pdir / "newton" / name;
        if (!std::filesystem::exists(src)) continue;
        const auto dst = plot / (pdir.filename().string() + "_" + name);
        std::filesystem::copy_file(src, dst, std::filesystem::copy_options::overwrite_existing);
        written.push_back(dst);
      }
    }
  }
  written.insert(written.begin(), {landscapes, gs});
  return written;
}

}  // namespace nodalvec
