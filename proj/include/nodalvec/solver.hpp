#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <utility>
#include <vector>

#include "nodalvec/ansatz.hpp"
#include "nodalvec/coupled.hpp"
#include "nodalvec/energy.hpp"
#include "nodalvec/grid_field.hpp"
#include "nodalvec/symmetry.hpp"

namespace nodalvec {

/// Couplings of the system, independent of whether synchronized amplitudes exist.
struct SystemCoefficients {
  double mu1 = 1, mu2 = 1, beta = 0;
  static SystemCoefficients from(const CoupledParams& p) { return {p.mu1, p.mu2, p.beta}; }
};

/// Residual fields of both equations with the 7-point Laplacian (zero outside the box).
GridField residual(const GridField& field, double eps, const PotentialModel& P,
                   const PotentialModel& Q, const SystemCoefficients& c);

/// Linearization of `residual` at `state` applied to `direction`.
GridField apply_linearization(const GridField& state, const GridField& direction, double eps,
                              const PotentialModel& P, const PotentialModel& Q,
                              const SystemCoefficients& c);

enum class SolveMode { Synchronized, Segregated };

struct NewtonOptions {
  double tol = 1e-8;           // residual sup-norm
  int max_iters = 30;
  int gmres_restart = 30;
  int gmres_max = 300;
  double min_step = 1.0 / 64;
  SolveMode mode = SolveMode::Synchronized;
  int k = 1;
  double threshold_fraction = 0.3;
  double gap_rotation = 0;     // T angle for the segregated gap, 0 means pi/k
  bool ring_warmup = true;     // first solve with the ring radius held at its initial value
  int warmup_iters = 20;
  double warmup_tol = 1e-6;
  int ring_iters = 15;
};

struct Census {
  int positives = 0;
  int negatives = 0;
  bool operator==(const Census&) const = default;
};

struct ProfileGap {
  double h1 = 0;
  double sup = 0;
};

struct SolveReport {
  bool converged = false;
  int warmup_iterations = 0;
  double warmup_residual = 0;
  int ring_iterations = 0;
  std::vector<double> residual_history;
  std::vector<int> linear_iterations;
  std::vector<double> step_lengths;
  double correction_norm_eps = 0;
  double ansatz_norm_eps = 0;
  Census peak_census_u, peak_census_v;
  double symmetry_defect_initial = 0;
  double symmetry_defect_final = 0;
  double max_iterate_defect = 0;
  ProfileGap profile_gap;
  std::string message;
};

/// Damped Newton-GMRES with the fast Helmholtz inverse as right preconditioner. Every
/// iterate is projected onto the symmetry class. Throws LinearSolveStall when GMRES
/// makes no headway; an unconverged run returns converged = false.
std::pair<GridField, SolveReport> newton_solve(const GridField& initial, double eps,
                                               const PotentialModel& P, const PotentialModel& Q,
                                               const SystemCoefficients& c,
                                               const NewtonOptions& options);

struct PeakCensus {
  Census u, v;
};

/// Strict local extrema over the 26-neighbourhood whose magnitude exceeds
/// threshold_fraction times the component's largest magnitude.
PeakCensus peak_census(const GridField& field, double threshold_fraction = 0.3);

/// sqrt|mu1 - beta| u - sqrt|mu2 - beta| v in the discrete H^1 and sup norms.
ProfileGap profile_gap_sync(const GridField& field, const CoupledParams& params);

/// sqrt(mu2) u - sqrt(mu1) v(T x), T the rotation about x3 by `angle` (pi/k by default).
ProfileGap profile_gap_seg(const GridField& field, double mu1, double mu2, int k,
                           double angle = 0);

/// sqrt(||phi||^2_{eps,P} + ||psi||^2_{eps,Q}) for the difference of two fields.
double correction_norm(const GridField& solution, const GridField& ansatz, double eps,
                       const PotentialModel& P, const PotentialModel& Q);

/// ||(u, v)||_eps of a single field.
double eps_norm(const GridField& field, double eps, const PotentialModel& P,
                const PotentialModel& Q);

struct CoercivityResult {
  double min_rayleigh;            // min Q(phi)/||phi||_eps^2 over probes
  double min_operator_ratio;      // min ||L phi||_{eps,*} / ||phi||_eps
  double translation_rayleigh;    // Rayleigh quotient of the raw ring-translation mode
  double median_rayleigh;
  int probes;
};

struct ProbeSetup {
  int k = 1;
  SolveMode mode = SolveMode::Synchronized;
  /// Ring-translation modes (d/dr of each component), used as the constraint direction
  /// once multiplied by the squared ansatz.
  GridField translation;
  std::uint64_t seed = 12345;
};

/// Random symmetric probes orthogonalised against the constraint fields.
CoercivityResult coercivity_probe(const GridField& ansatz, double eps, const PotentialModel& P,
                                  const PotentialModel& Q, const SystemCoefficients& c,
                                  const ProbeSetup& setup, int n_probes);

/// Ring-translation field of a synchronized or segregated ansatz.
GridField ring_translation(const PeakConfiguration& config, const RadialProfile& U,
                           double amp_u, const RadialProfile& V, double amp_v, const GridSpec& grid);

/// eps-dual norm of the first variation at the ansatz: the fourth-order residual is
/// Riesz-represented through (-eps^2 Lap + K) and its eps-norm returned.
double residual_dual_norm(const GridField& ansatz, double eps, const PotentialModel& P,
                          const PotentialModel& Q, const SystemCoefficients& c);

/// Checkpoint: field dump plus report JSON under `dir`.
void write_checkpoint(const std::filesystem::path& dir, const GridField& field,
                      const SolveReport& report);
GridField read_checkpoint_field(const std::filesystem::path& dir);
std::string report_json(const SolveReport& report);

}  // namespace nodalvec
