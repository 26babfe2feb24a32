#pragma once

#include <optional>
#include <string>
#include <vector>

#include "npg/core.hpp"
#include "npg/objective.hpp"
#include "npg/stationarity.hpp"
#include "npg/symmetric_set.hpp"

namespace npg {

/// Parameters of the nonmonotone projected gradient method.
struct SolverConfig {
  double t_min = 0.0;
  double t_max = 1e8;
  /// Backtracking multiplies the trial stepsize by this factor; must lie in (0, 1).
  double tau_shrink = 0.5;
  /// Upper end of the stepsize interval used by the support-change step; must lie in (0, 1/L).
  double tbar = 0.0;
  /// Sufficient decrease for the support-change candidate; must lie in (0, 1/tbar - L).
  double c1 = 0.0;
  /// Sufficient decrease for the nonmonotone projected gradient step.
  double c2 = 1e-4;
  /// Support changes are tried only when theta(tbar; x) <= eta.
  double eta = 1e3;
  int cycle = 5;           // N: period of the swap / support-change schedule
  int memory = 4;          // M: nonmonotone window holds the last M+1 values
  int change_phase = 3;    // q: iteration phase of the support-change step
  double initial_stepsize = 1.0;
  double f_tol = 1e-8;
  long max_iter = 100'000;
  /// Keep every iterate in the trace (memory heavy on large problems).
  bool record_iterates = false;

  /// Defaults used in the experiments for a loss with Lipschitz constant `lipschitz`:
  /// tbar = t_min = 0.995/L, c1 = min(0.995 (1/tbar - L), 1e-8).
  static SolverConfig with_defaults(double lipschitz, int memory, int cycle, int change_phase);

  /// Throws InvalidConfig when a parameter is out of range for the given Lipschitz constant.
  void validate(double lipschitz) const;

  /// Upper bound on backtracking trials per projected gradient step.
  long backtrack_bound(double lipschitz) const;
  /// Smallest stepsize a projected gradient step can accept.
  double min_accepted_stepsize(double lipschitz) const;
};

/// Settings for the stationarity certificate computed after a solve.
struct CertifyOptions {
  bool enabled = true;
  int grid_points = 50;
  double tol = 1e-6;
};

enum class StepKind { kSwap, kSupportChangeHat, kSupportChangeTilde, kProjectedGradient };

std::string to_string(StepKind kind);

struct IterationRecord {
  long k = 0;
  StepKind kind = StepKind::kProjectedGradient;
  double f_value = 0.0;       // f(x^{k+1})
  double f_before = 0.0;      // f(x^k)
  double stepsize = 0.0;      // accepted t_k, beta for support changes, 0 for swaps
  Support support;            // supp(x^{k+1})
  long backtrack_count = 0;   // projections tried in this step (PG steps only)
  double step_norm_sq = 0.0;  // ||x^{k+1} - x^k||^2
  double reference = 0.0;     // nonmonotone reference value max f(x^i) over the window
  // support-change steps: f of the projected candidate and its squared
  // distance to the support-changed candidate
  double candidate_f = 0.0;
  double candidate_dist_sq = 0.0;
};

struct IterateTrace {
  std::vector<IterationRecord> records;
  std::vector<Vector> iterates;  // x^0, x^1, ... when requested
  Vector x_final;
  double f_initial = 0.0;
  double f_final = 0.0;
  long iterations = 0;
  bool converged = false;  // stopped on f_tol rather than max_iter
  double wall_time_seconds = 0.0;
  std::optional<StationarityReport> certificate;
};

/// Barzilai-Borwein stepsize ||dx||^2 / |dx^T dg| clamped to [t_min, t_max];
/// t_max when dx^T dg = 0.
double bb_initial_stepsize(const Vector& x_cur, const Vector& x_prev, const Vector& g_cur, const Vector& g_prev,
                           double t_min, double t_max);

/// Projected gradient with constant stepsize alpha in (0, 1/L).
///
/// Stops when |f(x^k) - f(x^{k-1})| <= f_tol or after max_iter iterations.
IterateTrace pg_solve(const Objective& obj, const SymmetricSet& set, Index s, const Vector& x0, double alpha,
                      double f_tol = 1e-8, long max_iter = 100'000, const CertifyOptions& certify_opts = {},
                      bool record_iterates = false);

/// Nonmonotone projected gradient method with coordinate swaps and support changes.
///
/// Iteration k runs one of:
///   k mod N == 0                    coordinate swap, kept if it changes x
///   k mod N == q, theta <= eta      support change around the beta step
///   otherwise / on rejection        BB stepsize with nonmonotone backtracking
/// Points with ||x||_0 in {0, n} always take the projected gradient step.
IterateTrace npg_solve(const Objective& obj, const SymmetricSet& set, Index s, const Vector& x0,
                       const SolverConfig& config, const CertifyOptions& certify_opts = {});

/// Throws InfeasiblePoint unless x lies in C_s ∩ Omega within tol.
void require_feasible(const SymmetricSet& set, Index s, const Vector& x, double tol = 1e-10);

}  // namespace npg
