#include "npg/solvers.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <optional>

#include "npg/sparse_projection.hpp"
#include "npg/subroutines.hpp"

namespace npg {

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

// Projected gradient steps with a tiny trial stepsize reproduce x^k, which
// always passes the nonmonotone test; this cap only guards against NaN loops.
constexpr long kBacktrackHardCap = 2000;

bool degenerate(const Vector& x) {
  const Index nnz = count_nonzero(x);
  return nnz == 0 || nnz == x.size();
}

void attach_certificate(IterateTrace& trace, const Objective& obj, const SymmetricSet& set, Index s,
                        double tbar, const CertifyOptions& opts) {
  if (!opts.enabled) return;
  trace.certificate = certify(obj, set, s, trace.x_final, uniform_grid(tbar, opts.grid_points), opts.tol);
}

}  // namespace

std::string to_string(StepKind kind) {
  switch (kind) {
    case StepKind::kSwap: return "swap";
    case StepKind::kSupportChangeHat: return "support_change_accept_hx";
    case StepKind::kSupportChangeTilde: return "support_change_accept_tx";
    case StepKind::kProjectedGradient: return "projected_gradient";
  }
  return "unknown";
}

SolverConfig SolverConfig::with_defaults(double lipschitz, int memory, int cycle, int change_phase) {
  SolverConfig config;
  config.tbar = 0.995 / lipschitz;
  config.t_min = config.tbar;
  config.t_max = 1e8;
  config.c1 = std::min(0.995 * (1.0 / config.tbar - lipschitz), 1e-8);
  config.c2 = 1e-4;
  config.eta = 1e3;
  config.tau_shrink = 0.5;
  config.memory = memory;
  config.cycle = cycle;
  config.change_phase = change_phase;
  config.initial_stepsize = 1.0;
  return config;
}

void SolverConfig::validate(double lipschitz) const {
  auto fail = [](const std::string& what) { throw InvalidConfig("solver config: " + what); };
  if (!(t_min > 0.0 && t_min < t_max)) fail("need 0 < t_min < t_max");
  if (!(tau_shrink > 0.0 && tau_shrink < 1.0)) fail("need 0 < tau_shrink < 1");
  if (!(lipschitz > 0.0)) fail("Lipschitz constant must be positive");
  if (!(tbar > 0.0 && tbar < 1.0 / lipschitz)) fail("need 0 < tbar < 1/L");
  if (!(c1 > 0.0 && c1 < 1.0 / tbar - lipschitz)) fail("need 0 < c1 < 1/tbar - L");
  if (!(c2 > 0.0)) fail("need c2 > 0");
  if (!(eta > 0.0)) fail("need eta > 0");
  if (cycle < 3) fail("need N >= 3");
  if (memory < 0 || memory >= cycle) fail("need 0 <= M < N");
  if (change_phase <= 0 || change_phase >= cycle) fail("need 0 < q < N");
  if (!(f_tol >= 0.0)) fail("need f_tol >= 0");
  if (max_iter < 1) fail("need max_iter >= 1");
  if (!(initial_stepsize > 0.0)) fail("need a positive initial stepsize");
}

long SolverConfig::backtrack_bound(double lipschitz) const {
  const double raw = -(std::log(lipschitz + c2) + std::log(t_max)) / std::log(tau_shrink) + 2.0;
  return std::max(static_cast<long>(std::floor(raw)), 1L);
}

double SolverConfig::min_accepted_stepsize(double lipschitz) const {
  return std::min(t_min, tau_shrink / (lipschitz + c2));
}

double bb_initial_stepsize(const Vector& x_cur, const Vector& x_prev, const Vector& g_cur, const Vector& g_prev,
                           double t_min, double t_max) {
  if (!(t_min <= t_max)) throw InvalidConfig("bb_initial_stepsize: need t_min <= t_max");
  const Vector dx = x_cur - x_prev;
  const Vector dg = g_cur - g_prev;
  const double curvature = dx.dot(dg);
  if (curvature == 0.0) return t_max;
  return std::clamp(dx.squaredNorm() / std::abs(curvature), t_min, t_max);
}

void require_feasible(const SymmetricSet& set, Index s, const Vector& x, double tol) {
  if (!x.allFinite()) throw InfeasiblePoint("initial point has non-finite entries");
  if (count_nonzero(x) > s) throw InfeasiblePoint("initial point has more than s nonzeros");
  if (!set.contains(x, tol)) throw InfeasiblePoint("initial point lies outside " + set.name());
}

IterateTrace pg_solve(const Objective& obj, const SymmetricSet& set, Index s, const Vector& x0, double alpha,
                      double f_tol, long max_iter, const CertifyOptions& certify_opts, bool record_iterates) {
  if (x0.size() != obj.dim()) throw DimensionMismatch("pg_solve: x0 has wrong length");
  if (!(alpha > 0.0 && alpha < 1.0 / obj.lipschitz())) throw InvalidConfig("pg_solve: need 0 < alpha < 1/L");
  if (max_iter < 1) throw InvalidConfig("pg_solve: need max_iter >= 1");
  require_feasible(set, s, x0);

  IterateTrace trace;
  const auto start = Clock::now();
  Vector x = x0;
  Vector g;
  double f = obj.eval_grad(x, g);
  trace.f_initial = f;
  if (record_iterates) trace.iterates.push_back(x);

  for (long k = 0; k < max_iter; ++k) {
    Vector next = project_sparse(set, s, x - alpha * g).point;
    Vector g_next;
    const double f_next = obj.eval_grad(next, g_next);

    IterationRecord rec;
    rec.k = k;
    rec.kind = StepKind::kProjectedGradient;
    rec.f_before = f;
    rec.f_value = f_next;
    rec.stepsize = alpha;
    rec.backtrack_count = 1;
    rec.reference = f;
    rec.step_norm_sq = (next - x).squaredNorm();
    rec.support = support_of(next);
    trace.records.push_back(std::move(rec));
    if (record_iterates) trace.iterates.push_back(next);

    const double change = std::abs(f_next - f);
    x = std::move(next);
    g = std::move(g_next);
    f = f_next;
    if (change <= f_tol) {
      trace.converged = true;
      break;
    }
  }
  trace.wall_time_seconds = seconds_since(start);
  trace.iterations = static_cast<long>(trace.records.size());
  trace.x_final = x;
  trace.f_final = f;
  attach_certificate(trace, obj, set, s, alpha, certify_opts);
  return trace;
}

IterateTrace npg_solve(const Objective& obj, const SymmetricSet& set, Index s, const Vector& x0,
                       const SolverConfig& config, const CertifyOptions& certify_opts) {
  if (x0.size() != obj.dim()) throw DimensionMismatch("npg_solve: x0 has wrong length");
  if (s < 1 || s >= x0.size()) throw InvalidConfig("npg_solve: need 1 <= s <= n-1");
  const double lipschitz = obj.lipschitz();
  config.validate(lipschitz);
  require_feasible(set, s, x0);

  IterateTrace trace;
  const auto start = Clock::now();
  Vector x = x0;
  Vector g;
  double f = obj.eval_grad(x, g);
  trace.f_initial = f;
  if (config.record_iterates) trace.iterates.push_back(x);

  std::vector<double> history{f};
  Vector x_prev;
  Vector g_prev;

  for (long k = 0; k < config.max_iter; ++k) {
    IterationRecord rec;
    rec.k = k;
    rec.f_before = f;
    std::optional<Vector> next;
    const bool skip_special = degenerate(x);
    const long phase = k % config.cycle;

    if (!skip_special && phase == 0) {
      Vector swapped = coordinate_swap(obj, set, x, g);
      if (swapped != x) {
        rec.kind = StepKind::kSwap;
        next = std::move(swapped);
      }
    } else if (!skip_special && phase == config.change_phase) {
      const BetaTheta bt = beta_theta(set, x, g, config.tbar);
      if (bt.theta <= config.eta) {
        Vector tilde = bt.beta > 0.0 ? project_sparse(set, s, x - bt.beta * g).point : x;
        Vector g_tilde;
        const double f_tilde = obj.eval_grad(tilde, g_tilde);
        if (!degenerate(tilde)) {
          Vector hat = change_support(set, s, tilde, g_tilde, bt.beta);
          const double f_hat = obj.eval(hat);
          const double dist_sq = (hat - tilde).squaredNorm();
          if (f_hat <= f_tilde - 0.5 * config.c1 * dist_sq) {
            rec.kind = StepKind::kSupportChangeHat;
            rec.candidate_f = f_tilde;
            rec.candidate_dist_sq = dist_sq;
            next = std::move(hat);
          }
        }
        if (!next && bt.beta > 0.0) {
          rec.kind = StepKind::kSupportChangeTilde;
          next = std::move(tilde);
        }
        if (next) rec.stepsize = bt.beta;
      }
    }

    if (!next) {
      const double t0 = x_prev.size() == 0
                            ? std::clamp(config.initial_stepsize, config.t_min, config.t_max)
                            : bb_initial_stepsize(x, x_prev, g, g_prev, config.t_min, config.t_max);
      const auto window_begin = history.end() - std::min<std::ptrdiff_t>(config.memory + 1, history.size());
      const double reference = *std::max_element(window_begin, history.end());
      double t = t0;
      long trials = 0;
      Vector w;
      while (true) {
        ++trials;
        w = project_sparse(set, s, x - t * g).point;
        if (obj.eval(w) <= reference - 0.5 * config.c2 * (w - x).squaredNorm()) break;
        if (trials >= kBacktrackHardCap) throw Error("npg_solve: backtracking did not terminate");
        t *= config.tau_shrink;
      }
      rec.kind = StepKind::kProjectedGradient;
      rec.stepsize = t;
      rec.backtrack_count = trials;
      rec.reference = reference;
      next = std::move(w);
    }

    Vector g_next;
    const double f_next = obj.eval_grad(*next, g_next);
    rec.f_value = f_next;
    rec.step_norm_sq = (*next - x).squaredNorm();
    rec.support = support_of(*next);
    trace.records.push_back(std::move(rec));
    if (config.record_iterates) trace.iterates.push_back(*next);

    const double change = std::abs(f_next - f);
    x_prev = std::move(x);
    g_prev = std::move(g);
    x = std::move(*next);
    g = std::move(g_next);
    f = f_next;
    history.push_back(f);
    if (change <= config.f_tol) {
      trace.converged = true;
      break;
    }
  }
  trace.wall_time_seconds = seconds_since(start);
  trace.iterations = static_cast<long>(trace.records.size());
  trace.x_final = x;
  trace.f_final = f;
  attach_certificate(trace, obj, set, s, config.tbar, certify_opts);
  return trace;
}

}  // namespace npg
