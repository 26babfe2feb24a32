// Acceptance suite: one PASS/FAIL line per criterion, nonzero exit on any failure.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <string>
#include <vector>

#include "npg/bench.hpp"
#include "npg/solvers.hpp"
#include "npg/sparse_projection.hpp"
#include "npg/stationarity.hpp"
#include "test_util.hpp"

using namespace npg;

namespace {

// Pinned tolerances and budgets.
constexpr double kProjectionTol = 1e-10;
constexpr double kProjectionBudget = 60.0;
constexpr int kGridPointsBeta = 10'000;
constexpr double kBetaRelTol = 1e-8;
constexpr double kBetaAbsTol = 1e-8;
constexpr double kBetaBudget = 10.0;
constexpr double kDescentTol = 1e-9;
constexpr int kCertifyGrid = 50;
constexpr double kCertifyTol = 1e-6;
constexpr double kStationaryFtol = 1e-14;
constexpr double kSimplexSumTol = 1e-10;
constexpr double kNonnegTol = 1e-12;
constexpr double kOrderTol = -1e-12;
constexpr double kTable1Budget = 5.0;
constexpr double kTable2Budget = 60.0;
constexpr double kTable3Budget = 10.0;

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

struct Outcome {
  bool pass = false;
  std::string detail;
};

std::string format(const char* fmt, auto... args) {
  char buffer[512];
  std::snprintf(buffer, sizeof(buffer), fmt, args...);
  return buffer;
}

// Every NPG trace and every certificate seen by the suite, for criteria 4 and 9.
struct SuiteLog {
  struct NpgRun {
    std::string label;
    double lipschitz;
    SolverConfig config;
    std::vector<IterationRecord> records;
  };
  struct Witness {
    std::string label;
    double point_f;
    double witness_f;
  };
  std::vector<NpgRun> npg_runs;
  std::vector<Witness> witnesses;
  long certificates = 0;

  void add_certificate(const std::string& label, const Objective& obj, const IterateTrace& trace) {
    if (!trace.certificate) return;
    ++certificates;
    if (trace.certificate->witness) {
      witnesses.push_back({label, obj.eval(trace.x_final), obj.eval(*trace.certificate->witness)});
    }
  }
};

SuiteLog suite;

IterateTrace run_npg(const std::string& label, const Instance& inst, SolverConfig config,
                     const CertifyOptions& certify = {}) {
  const double lipschitz = inst.objective.lipschitz();
  IterateTrace trace = npg_solve(inst.objective, inst.set, inst.s, inst.x0, config, certify);
  suite.npg_runs.push_back({label, lipschitz, config, trace.records});
  suite.add_certificate(label, inst.objective, trace);
  return trace;
}

IterateTrace run_pg(const std::string& label, const Instance& inst, double f_tol = 1e-8, bool record = false) {
  const double alpha = 0.995 / inst.objective.lipschitz();
  IterateTrace trace = pg_solve(inst.objective, inst.set, inst.s, inst.x0, alpha, f_tol, 100'000, {}, record);
  suite.add_certificate(label, inst.objective, trace);
  return trace;
}

SolverConfig family_config(const Instance& inst, bool record = false) {
  SolverConfig config = default_npg_config(inst.family, inst.objective.lipschitz());
  config.record_iterates = record;
  return config;
}

std::string label_of(const Instance& inst, const char* method) {
  return format("%s seed %llu %s", to_string(inst.family).c_str(), static_cast<unsigned long long>(inst.seed), method);
}

Outcome projection_oracle() {
  const auto start = Clock::now();
  long cases = 0;
  long failures = 0;
  double worst = 0.0;
  std::uint64_t seed = 1;
  for (const auto& set : testing::catalog()) {
    for (Index n = 4; n <= 8; ++n) {
      for (Index s = 1; s <= 3; ++s) {
        Rng rng(seed++);
        for (int trial = 0; trial < 500; ++trial) {
          const Vector x = rng.normal_vector(n);
          const double ours = (project_sparse(set, s, x).point - x).squaredNorm();
          const double best = (brute_force_project(set, s, x).front().point - x).squaredNorm();
          const double gap = std::abs(ours - best);
          worst = std::max(worst, gap);
          ++cases;
          if (gap > kProjectionTol) ++failures;
        }
      }
    }
  }
  const double elapsed = seconds_since(start);
  return {failures == 0 && elapsed < kProjectionBudget,
          format("%ld inputs, %ld above %.0e, worst gap %.2e, %.2f s", cases, failures, kProjectionTol, worst,
                 elapsed)};
}

Outcome beta_theta_grid() {
  const auto start = Clock::now();
  const auto sets = testing::catalog();
  Rng rng(2024);
  int theta_failures = 0;
  int gamma_failures = 0;
  int below_grid = 0;
  int sign_free_failures = 0;
  double worst_theta_gap = 0.0;
  double worst_excess = 0.0;
  double worst_refined_gap = 0.0;
  double diagnostic_seconds = 0.0;
  for (int trial = 0; trial < 200; ++trial) {
    const SymmetricSet& set = sets[trial % sets.size()];
    const Index n = 5 + static_cast<Index>(rng.below(26));
    const Index s = 1 + static_cast<Index>(rng.below(static_cast<std::uint64_t>(n - 1)));
    Vector x;
    do {
      x = project_sparse(set, s, 2.0 * rng.normal_vector(n)).point;
    } while (count_nonzero(x) == 0);
    const Vector grad = rng.normal_vector(n);
    const double tbar = rng.uniform(0.1, 2.0);
    const BetaTheta bt = beta_theta(set, x, grad, tbar);
    double grid_min = std::numeric_limits<double>::infinity();
    for (double t : uniform_grid(tbar, kGridPointsBeta)) grid_min = std::min(grid_min, gamma(set, x, grad, t));
    const double theta_gap = std::abs(bt.theta - grid_min);
    const double excess = gamma(set, x, grad, bt.beta) - grid_min;
    worst_theta_gap = std::max(worst_theta_gap, theta_gap);
    worst_excess = std::max(worst_excess, excess);
    const bool theta_ok = theta_gap <= kBetaRelTol * (1.0 + std::abs(bt.theta));
    if (!theta_ok) {
      ++theta_failures;
      if (bt.theta < grid_min) ++below_grid;
      if (set.kind() == SetKind::kSignFree) ++sign_free_failures;
      // diagnostic only: a 100x finer grid should close the gap if theta is attained between grid points
      const auto diagnostic_start = Clock::now();
      double refined = grid_min;
      for (double t : uniform_grid(tbar, 100 * kGridPointsBeta)) refined = std::min(refined, gamma(set, x, grad, t));
      worst_refined_gap = std::max(worst_refined_gap, std::abs(bt.theta - refined));
      diagnostic_seconds += seconds_since(diagnostic_start);
    }
    if (excess > kBetaAbsTol) ++gamma_failures;
  }
  const double elapsed = seconds_since(start) - diagnostic_seconds;
  return {theta_failures == 0 && gamma_failures == 0 && elapsed < kBetaBudget,
          format("200 tuples, theta off grid-min in %d (%d sign-free, %d with theta below grid-min), "
                 "gamma(beta) above grid-min in %d, worst |theta-grid| %.2e, worst gamma(beta)-grid %.2e, "
                 "failing tuples on a 1e6 grid %.2e, %.2f s",
                 theta_failures, sign_free_failures, below_grid, gamma_failures, worst_theta_gap, worst_excess,
                 worst_refined_gap, elapsed)};
}

Outcome pg_descent() {
  long checked = 0;
  long failures = 0;
  for (std::uint64_t seed = 1; seed <= 20; ++seed) {
    const Instance inst = make_instance(Family::kCsLeastSquares, {60, 256, 10}, seed);
    const double lipschitz = inst.objective.lipschitz();
    const double alpha = 0.995 / lipschitz;
    const IterateTrace trace = run_pg(label_of(inst, "pg"), inst);
    for (const auto& rec : trace.records) {
      ++checked;
      const double bound = rec.f_before - 0.5 * (1.0 / alpha - lipschitz) * rec.step_norm_sq +
                           kDescentTol * (1.0 + std::abs(rec.f_before));
      if (rec.f_value > bound) ++failures;
    }
  }
  return {failures == 0, format("20 instances, %ld iterations, %ld violations", checked, failures)};
}

Outcome npg_stationarity() {
  int passed = 0;
  int runs = 0;
  std::string failed;
  const CertifyOptions certify{true, kCertifyGrid, kCertifyTol};
  for (std::uint64_t seed = 1; seed <= 10; ++seed) {
    for (Family family : {Family::kCsLeastSquares, Family::kLogistic}) {
      const BenchSize size = family == Family::kLogistic ? BenchSize{200, 500, 0} : BenchSize{60, 256, 10};
      const Instance inst = make_instance(family, size, 100 + seed);
      SolverConfig config = family_config(inst);
      config.f_tol = kStationaryFtol;
      const IterateTrace trace = run_npg(label_of(inst, "npg"), inst, config, certify);
      ++runs;
      if (trace.certificate && trace.certificate->strong) {
        ++passed;
      } else {
        failed += format(" [%s violation %.2e%s]", label_of(inst, "npg").c_str(),
                         trace.certificate ? trace.certificate->worst_violation : -1.0,
                         trace.converged ? "" : " max_iter");
      }
    }
  }
  return {passed >= 19, format("%d/%d strongly stationary (need 19)%s", passed, runs, failed.c_str())};
}

Outcome table1() {
  int npg_better = 0;
  int wrong_cardinality = 0;
  double slowest = 0.0;
  double pg_sum = 0.0;
  double npg_sum = 0.0;
  for (std::uint64_t seed = 1; seed <= 10; ++seed) {
    const Instance inst = make_instance(Family::kCsLeastSquares, {120, 512, 20}, seed, 0.1);
    const IterateTrace pg = run_pg(label_of(inst, "pg"), inst);
    const IterateTrace npg = run_npg(label_of(inst, "npg"), inst, family_config(inst));
    if (count_nonzero(pg.x_final) != 20) ++wrong_cardinality;
    if (count_nonzero(npg.x_final) != 20) ++wrong_cardinality;
    if (npg.f_final < pg.f_final) ++npg_better;
    slowest = std::max({slowest, pg.wall_time_seconds, npg.wall_time_seconds});
    pg_sum += pg.f_final;
    npg_sum += npg.f_final;
  }
  return {wrong_cardinality == 0 && npg_better >= 8 && slowest < kTable1Budget,
          format("cardinality != 20 in %d runs, NPG < PG in %d/10, mean f PG %.4f NPG %.4f, slowest solve %.3f s",
                 wrong_cardinality, npg_better, pg_sum / 10, npg_sum / 10, slowest)};
}

Outcome table2() {
  int npg_lower = 0;
  int npg_faster = 0;
  double slowest = 0.0;
  double pg_time = 0.0;
  double npg_time = 0.0;
  for (std::uint64_t seed = 1; seed <= 10; ++seed) {
    const Instance inst = make_instance(Family::kLogistic, {500, 1000, 0}, seed);
    const IterateTrace pg = run_pg(label_of(inst, "pg"), inst);
    const IterateTrace npg = run_npg(label_of(inst, "npg"), inst, family_config(inst));
    if (npg.f_final <= pg.f_final) ++npg_lower;
    if (npg.wall_time_seconds <= pg.wall_time_seconds) ++npg_faster;
    slowest = std::max({slowest, pg.wall_time_seconds, npg.wall_time_seconds});
    pg_time += pg.wall_time_seconds;
    npg_time += npg.wall_time_seconds;
  }
  return {npg_lower >= 8 && npg_faster >= 8 && slowest < kTable2Budget,
          format("NPG <= PG objective in %d/10, NPG faster in %d/10, mean time PG %.3f s NPG %.3f s, slowest %.3f s",
                 npg_lower, npg_faster, pg_time / 10, npg_time / 10, slowest)};
}

Outcome table3() {
  int npg_better = 0;
  long infeasible = 0;
  long iterates = 0;
  double slowest = 0.0;
  double pg_sum = 0.0;
  double npg_sum = 0.0;
  auto check = [&](const IterateTrace& trace) {
    for (const Vector& x : trace.iterates) {
      ++iterates;
      if (std::abs(x.sum() - 1.0) > kSimplexSumTol || x.minCoeff() < -kNonnegTol || count_nonzero(x) > 5) {
        ++infeasible;
      }
    }
  };
  for (std::uint64_t seed = 1; seed <= 10; ++seed) {
    const Instance inst = make_instance(Family::kSimplexLeastSquares, {100, 500, 0}, seed);
    const IterateTrace pg = run_pg(label_of(inst, "pg"), inst, 1e-8, true);
    const IterateTrace npg = run_npg(label_of(inst, "npg"), inst, family_config(inst, true));
    check(pg);
    check(npg);
    if (npg.f_final < pg.f_final) ++npg_better;
    slowest = std::max({slowest, pg.wall_time_seconds, npg.wall_time_seconds});
    pg_sum += pg.f_final;
    npg_sum += npg.f_final;
  }
  return {infeasible == 0 && npg_better >= 8 && slowest < kTable3Budget,
          format("%ld iterates, %ld infeasible, NPG < PG in %d/10, mean f PG %.2f NPG %.2f, slowest %.3f s", iterates,
                 infeasible, npg_better, pg_sum / 10, npg_sum / 10, slowest)};
}

Outcome backtracking_bound() {
  long steps = 0;
  long count_failures = 0;
  long range_failures = 0;
  long worst_count = 0;
  for (const auto& run : suite.npg_runs) {
    const long bound = run.config.backtrack_bound(run.lipschitz);
    const double lo = run.config.min_accepted_stepsize(run.lipschitz);
    for (const auto& rec : run.records) {
      if (rec.kind != StepKind::kProjectedGradient) continue;
      ++steps;
      worst_count = std::max(worst_count, rec.backtrack_count);
      if (rec.backtrack_count > bound) ++count_failures;
      if (rec.stepsize < lo || rec.stepsize > run.config.t_max) ++range_failures;
    }
  }
  return {steps > 0 && count_failures == 0 && range_failures == 0,
          format("%zu NPG runs, %ld gradient steps, max backtracks %ld, %ld over bound, %ld stepsizes out of range",
                 suite.npg_runs.size(), steps, worst_count, count_failures, range_failures)};
}

Outcome witness_improvement() {
  long failures = 0;
  for (const auto& w : suite.witnesses) {
    if (!(w.witness_f < w.point_f)) ++failures;
  }
  return {failures == 0, format("%ld certificates, %zu witnesses, %ld without strict decrease", suite.certificates,
                                suite.witnesses.size(), failures)};
}

Outcome order_preservation() {
  const auto sets = testing::catalog();
  Rng rng(77);
  long violations = 0;
  double worst = 0.0;
  for (int trial = 0; trial < 1000; ++trial) {
    const SymmetricSet& set = sets[trial % sets.size()];
    const Index n = 2 + static_cast<Index>(rng.below(19));
    const Vector x = rng.normal_vector(n) * rng.uniform(0.1, 3.0);
    const Vector px = set.p(x);
    const Vector py = set.p(set.project(x));
    for (Index i = 0; i < n; ++i) {
      for (Index j = 0; j < n; ++j) {
        const double product = (py[i] - py[j]) * (px[i] - px[j]);
        worst = std::min(worst, product);
        if (product < kOrderTol) ++violations;
      }
    }
  }
  return {violations == 0, format("1000 pairs, %ld violations, most negative product %.2e", violations, worst)};
}

}  // namespace

int main() {
  struct Criterion {
    int id;
    const char* name;
    std::function<Outcome()> run;
  };
  // Solver-based criteria run before 4 and 9, which audit the traces they leave behind.
  const std::vector<Criterion> criteria{
      {1, "projection oracle equivalence", projection_oracle},
      {2, "beta/theta grid oracle", beta_theta_grid},
      {3, "PG descent inequality", pg_descent},
      {5, "NPG strong stationarity", npg_stationarity},
      {6, "sparse recovery least squares ordering", table1},
      {7, "sparse logistic regression ordering", table2},
      {8, "simplex least squares feasibility and ordering", table3},
      {4, "backtracking bound and stepsize range", backtracking_bound},
      {9, "witness improvement", witness_improvement},
      {10, "order preservation", order_preservation},
  };
  int failures = 0;
  for (const auto& c : criteria) {
    Outcome outcome;
    try {
      outcome = c.run();
    } catch (const std::exception& e) {
      outcome = {false, std::string("exception: ") + e.what()};
    }
    if (!outcome.pass) ++failures;
    std::printf("%s %2d %s: %s\n", outcome.pass ? "PASS" : "FAIL", c.id, c.name, outcome.detail.c_str());
    std::fflush(stdout);
  }
  std::printf("%d of %zu criteria failed\n", failures, criteria.size());
  return failures == 0 ? 0 : 1;
}
