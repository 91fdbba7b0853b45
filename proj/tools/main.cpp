#include <iostream>
#include <thread>

#include <CLI11.hpp>

#include "nodalvec/errors.hpp"
#include "nodalvec/experiment.hpp"

using namespace nodalvec;

namespace {

int exit_code(ErrorCode code) { return code == ErrorCode::ConfigInvalid ? 2 : 1; }

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"nodalvec: nodal vector solutions of coupled Schrodinger systems"};
  app.require_subcommand(1);

  std::string config_path, out_dir;
  int workers = 1;
  bool resume = false;

  auto* run = app.add_subcommand("run", "run every sweep point of a config");
  run->add_option("--config", config_path, "INI config file")->required()->check(CLI::ExistingFile);
  run->add_option("--out", out_dir, "output directory (overrides output.dir)");
  run->add_option("--workers", workers, "worker threads")->check(CLI::PositiveNumber);
  run->add_flag("--resume", resume, "reuse finished points and converged checkpoints");

  auto* validate_cmd = app.add_subcommand("validate", "check a config against the theorem hypotheses");
  validate_cmd->add_option("--config", config_path, "INI config file")->required()->check(CLI::ExistingFile);

  auto* plot = app.add_subcommand("plot-data", "gather landscapes and slices of a finished run");
  plot->add_option("--out", out_dir, "run output directory");
  plot->add_option("--config", config_path, "config (used for the output directory if --out is absent)");

  CLI11_PARSE(app, argc, argv);

  try {
    if (*run) {
      const ExperimentConfig cfg = ExperimentConfig::load(config_path);
      RunOptions opt;
      if (!out_dir.empty()) opt.output_dir = out_dir;
      opt.workers = workers;
      opt.resume = resume;
      run_experiment(cfg, opt);
      std::cout << "wrote " << (out_dir.empty() ? cfg.output_dir.string() : out_dir) << "/summary.json\n";
      return 0;
    }
    if (*validate_cmd) {
      const ExperimentConfig cfg = ExperimentConfig::load(config_path);
      const auto diags = validate(cfg);
      bool bad = false;
      for (const auto& d : diags) {
        const bool err = d.severity == Diagnostic::Severity::Error;
        bad |= err;
        std::cout << (err ? "error" : "warning") << ": [" << d.condition << "] " << d.message << "\n";
      }
      if (diags.empty()) std::cout << "ok\n";
      return bad ? 2 : 0;
    }
    if (*plot) {
      if (out_dir.empty()) {
        if (config_path.empty()) throw CLI::RequiredError("--out or --config");
        out_dir = ExperimentConfig::load(config_path).output_dir.string();
      }
      for (const auto& p : write_plot_data(out_dir)) std::cout << p.string() << "\n";
      return 0;
    }
  } catch (const Error& e) {
    std::cerr << e.what() << "\n";
    return exit_code(e.code());
  } catch (const std::exception& e) {
    std::cerr << e.what() << "\n";
    return 1;
  }
  return 0;
}
