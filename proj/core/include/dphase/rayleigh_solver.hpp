#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "dphase/energy.hpp"

namespace dphase {

struct QuotientConfig {
  double initial_step = 1.0;
  double armijo_factor = 0.5;
  double sufficient_decrease = 1e-4;
  int max_iterations = 20000;
  int restarts = 8;
  std::uint64_t seed = 42;
  /// Stop when the relative objective change stays below this for
  /// `stall_window` consecutive iterations.
  double relative_change_tol = 1e-15;
  int stall_window = 5;
  /// Stop as soon as the scaled residual drops below this.
  double residual_tol = 1e-10;
  /// A restart counts as converged when its residual is at most this.
  double converged_tol = 1e-6;
  /// ||u||_{p2} below this is the trivial solution.
  double nontriviality_floor = 1e-6;
  int lbfgs_memory = 10;
};

struct HistoryRow {
  int iter;
  double objective;
  double residual_norm;
  double step_size;
};
using History = std::vector<HistoryRow>;

/// Writes `iter,objective,residual_norm,step_size`.
void write_history_csv(std::ostream& out, const History& history);

/// Minimum of a Rayleigh quotient with the argmin and per-restart records.
struct QuotientResult {
  double value;
  GridFunction minimizer;
  double residual_norm;
  int iterations;
  int restarts_used;
  int best_restart;
  std::vector<History> histories;
};

enum class EigenStatus { converged, trivial_only, max_iter };
std::string to_string(EigenStatus s);

struct EigenResult {
  double lambda;
  GridFunction u;
  double residual_norm;
  double r1_value;  // NaN when u is trivial
  double r2_value;  // NaN when u is trivial
  double objective;  // N(u) = E_1(u) - lambda E_2(u)
  int iterations;
  int restarts_used;
  EigenStatus status;
  std::vector<History> histories;
};

/// E_1(u) / E_2(u). Throws ZeroDenominator when E_2(u) = 0.
double r1(const GridFunction& u, const ProblemSpec& spec);
/// Num_2(u) / Den_2(u). Throws ZeroDenominator when Den_2(u) = 0.
double r2(const GridFunction& u, const ProblemSpec& spec);

/// Starting directions: the lowest sine (tensor sine) modes followed by seeded
/// random nodal vectors; `count` in total.
std::vector<GridFunction> start_directions(const MeshPtr& mesh, int count, std::uint64_t seed);

/// Multi-start preconditioned descent on R1 = E_1 / E_2. Each start is first
/// rescaled by a golden-section search over its amplitude. `warm_start`, when
/// given, is tried before the regular starts.
/// Throws ConvergenceError if no restart reaches cfg.converged_tol.
QuotientResult minimize_r1(const ProblemSpec& spec, const QuotientConfig& cfg,
                           const std::optional<GridFunction>& warm_start = std::nullopt);
/// Same for R2 = Num_2 / Den_2.
QuotientResult minimize_r2(const ProblemSpec& spec, const QuotientConfig& cfg,
                           const std::optional<GridFunction>& warm_start = std::nullopt);

/// Global minimization of N(v) = E_1(v) - lambda E_2(v) from multiple starts.
/// Prefers the lowest-N converged nontrivial restart; reports trivial_only
/// when every restart collapses below the nontriviality floor.
EigenResult solve_at(double lambda, const ProblemSpec& spec, const QuotientConfig& cfg,
                     const std::optional<GridFunction>& warm_start = std::nullopt);

struct CertificateReport {
  bool certified = false;
  double lambda = 0.0;
  double lambda_lower = 0.0;
  double gap = 0.0;  // lambda_lower - lambda
  /// max over random u of |R(u).u - (Num_2 - lambda Den_2)| / scale
  double identity_error = 0.0;
  int rays = 0;
  int negative_rays = 0;  // rays along which N < 0 somewhere
  double min_ray_objective = 0.0;
  std::string summary() const;
};

/// Certificate that no eigenfunction exists at lambda < lambda_lower: any
/// discrete solution u would satisfy lambda = r2(u) >= lambda_lower. The
/// identity is checked on random vectors and N >= 0 is sampled along 200
/// random rays as corroboration.
/// Throws PreconditionError when lambda >= lambda_lower.
CertificateReport certify_nonexistence(double lambda, const ProblemSpec& spec,
                                       const QuotientConfig& cfg, double lambda_lower);
/// Computes lambda_lower with minimize_r2 first.
CertificateReport certify_nonexistence(double lambda, const ProblemSpec& spec,
                                       const QuotientConfig& cfg);

/// min over t on a log grid in [1e-3, 1e3] of N(t v) for `rays` random unit
/// directions v (||v||_{p2} = 1). Returns (negative ray count, minimum value).
std::pair<int, double> sample_rays(double lambda, const ProblemSpec& spec, int rays,
                                   std::uint64_t seed);

}  // namespace dphase
