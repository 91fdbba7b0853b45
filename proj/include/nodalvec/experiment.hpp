#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "nodalvec/energy.hpp"

namespace nodalvec {

enum class ExperimentMode { Sync, Seg };

/// Everything a run needs; the output files are a function of this alone.
struct ExperimentConfig {
  ExperimentMode mode = ExperimentMode::Sync;
  double mu1 = 1, mu2 = 1, beta = 0.5;
  int k = 1;
  PotentialModel P{1, 2, 0, 1};
  PotentialModel Q{0, 2, 0, 1};
  std::vector<double> eps_list{0.15};
  std::optional<double> delta;   // S_eps half-width in units of the window; default_delta if unset
  double beta_guard = 0.1;       // seg mode accepts beta < beta_guard

  int landscape_samples = 9;     // 0 skips the measured landscape
  double landscape_resolution = 8;
  double landscape_margin = 7;

  bool newton = true;
  double solver_margin = 7;      // box half-width beyond the ring, in eps
  double solver_resolution = 4.4;  // h <= eps / resolution
  int max_n = 97;
  double newton_tol = 1e-8;
  int max_iters = 30;
  double threshold_fraction = 0.3;
  std::optional<double> fallback_eps;

  std::filesystem::path output_dir = "nodalvec-out";

  double b() const { return Q.a; }
  double n() const { return Q.m; }

  /// INI text: sections [system], [potential_p], [potential_q], [sweep], [landscape],
  /// [solver], [output]. Unknown keys are rejected.
  static ExperimentConfig parse(const std::string& text);
  static ExperimentConfig load(const std::filesystem::path& path);
};

std::string to_string(ExperimentMode mode);

struct Diagnostic {
  enum class Severity { Warning, Error };
  Severity severity;
  std::string condition;  // short label of the hypothesis concerned
  std::string message;
};

/// Every violated or marginal hypothesis of the existence theorems; never throws.
std::vector<Diagnostic> validate(const ExperimentConfig& config);

/// Throws ConfigInvalid naming the first violated condition.
void require_valid(const ExperimentConfig& config);

struct RunOptions {
  std::optional<std::filesystem::path> output_dir;  // overrides the config
  int workers = 1;
  bool resume = false;
};

/// Runs every sweep point, writes per-point directories and summary.json, and returns
/// the summary text. A failing point is recorded in the summary; the rest still run.
std::string run_experiment(const ExperimentConfig& config, const RunOptions& options);

/// Directory name for one sweep point, e.g. "sync_eps0.15".
std::string point_directory(ExperimentMode mode, double eps);

/// Collects slices and landscapes of a finished run into <dir>/plot.
/// Returns the files written.
std::vector<std::filesystem::path> write_plot_data(const std::filesystem::path& dir);

}  // namespace nodalvec
