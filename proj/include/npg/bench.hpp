#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "npg/core.hpp"
#include "npg/objective.hpp"
#include "npg/solvers.hpp"
#include "npg/symmetric_set.hpp"

namespace npg {

enum class Family { kCsLeastSquares, kLogistic, kSimplexLeastSquares };

std::string to_string(Family family);
Family parse_family(const std::string& text);

/// A generated test problem: minimize the objective over C_s ∩ set from x0.
struct Instance {
  Family family = Family::kCsLeastSquares;
  Objective objective;
  SymmetricSet set;
  Index s = 0;
  Vector x0;
  std::optional<Vector> ground_truth;
  std::uint64_t seed = 0;
};

/// Sparse recovery least squares: A has orthonormal rows from the QR factor of
/// an n x m Gaussian matrix, b = A x_true + sigma v with x_true s-sparse and
/// +-1 on a random support. Omega is the full space and x0 = 0.
Instance gen_cs_instance(Index m, Index n, Index s, double sigma, Rng& rng);

/// Balanced two-class logistic regression. Positive sample features are
/// N(mu_pos, 1) with mu_pos ~ U[0, 1] drawn once per instance; negative ones
/// use mu_neg ~ U[-1, 0]. s = max(1, n/100), Omega is the full space, x0 = 0.
/// `all_positive` labels every sample +1 (test hook).
Instance gen_logistic_instance(Index m, Index n, Rng& rng, bool all_positive = false);

/// Least squares over the unit simplex: A = D Abar with Abar orthonormal rows
/// and D = diag(1^2, ..., m^2); b = A z / ||z||_1 with z ~ U[0, 1]^n.
/// s = max(1, n/100) and x0 puts mass 1/s on the first s coordinates.
Instance gen_simplex_instance(Index m, Index n, Rng& rng);

/// Sparsity used by the logistic and simplex families.
Index default_sparsity(Index n);

/// m x n matrix with orthonormal rows, the transpose of the thin Q factor of a Gaussian n x m matrix.
Matrix orthonormal_rows(Index m, Index n, Rng& rng);

enum class Method { kPg, kNpg };
std::string to_string(Method method);

/// NPG parameters used for each family: (M, N, q).
SolverConfig default_npg_config(Family family, double lipschitz);

/// One (instance, method) result row.
struct BenchRow {
  Family family = Family::kCsLeastSquares;
  Index m = 0;
  Index n = 0;
  Index s = 0;
  Method method = Method::kPg;
  std::uint64_t seed = 0;
  Index cardinality = 0;
  double objective = 0.0;
  double time_s = 0.0;
  long iterations = 0;
  bool strong_stationary = false;
  double violation = 0.0;
  std::string error;  // non-empty when the solve threw
};

/// Medians over the successful seeds of one (family, size, method) group.
struct BenchSummary {
  Family family = Family::kCsLeastSquares;
  Index m = 0;
  Index n = 0;
  Index s = 0;
  Method method = Method::kPg;
  int runs = 0;  // rows without an error
  double median_cardinality = 0.0;
  double median_objective = 0.0;
  double median_time_s = 0.0;
  int strong_stationary = 0;  // runs whose certificate passed
};

struct BenchReport {
  std::vector<BenchRow> rows;
  std::vector<BenchSummary> summaries;
};

/// Groups rows by (family, m, n, s, method) in first-appearance order.
std::vector<BenchSummary> summarize(const std::vector<BenchRow>& rows);

struct BenchSize {
  Index m = 0;
  Index n = 0;
  Index s = 0;  // ignored by families that derive s from n
};

struct BenchOptions {
  std::vector<Family> families;
  std::vector<BenchSize> sizes;
  std::vector<std::uint64_t> seeds;
  std::vector<Method> methods{Method::kPg, Method::kNpg};
  double sigma = 0.1;
  double f_tol = 1e-8;
  long max_iter = 100'000;
  CertifyOptions certify;
};

/// Builds the instance for a family / size / seed triple.
Instance make_instance(Family family, const BenchSize& size, std::uint64_t seed, double sigma = 0.1);

/// Runs one method on one instance and fills a result row. Solver errors are
/// reported in the row rather than thrown.
BenchRow run_method(const Instance& instance, Method method, const BenchOptions& options,
                    IterateTrace* trace_out = nullptr);

/// Every family x size x seed instance, each solved with every method. Rows
/// follow that declaration order.
BenchReport run_benchmark(const BenchOptions& options);

}  // namespace npg
