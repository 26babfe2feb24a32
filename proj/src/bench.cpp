#include "npg/bench.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace npg {

std::string to_string(Family family) {
  switch (family) {
    case Family::kCsLeastSquares: return "cs-least-squares";
    case Family::kLogistic: return "logistic";
    case Family::kSimplexLeastSquares: return "simplex-least-squares";
  }
  return "unknown";
}

Family parse_family(const std::string& text) {
  if (text == "cs-least-squares" || text == "cs") return Family::kCsLeastSquares;
  if (text == "logistic") return Family::kLogistic;
  if (text == "simplex-least-squares" || text == "simplex") return Family::kSimplexLeastSquares;
  throw InvalidConfig("unknown family '" + text + "'");
}

std::string to_string(Method method) { return method == Method::kPg ? "pg" : "npg"; }

Index default_sparsity(Index n) { return std::max<Index>(1, n / 100); }

Matrix orthonormal_rows(Index m, Index n, Rng& rng) {
  const Matrix w = rng.normal_matrix(n, m);
  Eigen::HouseholderQR<Eigen::MatrixXd> qr(w);
  const Eigen::MatrixXd thin_q = qr.householderQ() * Eigen::MatrixXd::Identity(n, m);
  return thin_q.transpose();
}

Instance gen_cs_instance(Index m, Index n, Index s, double sigma, Rng& rng) {
  if (m < 1 || m >= n) throw InvalidConfig("cs instance: need 1 <= m < n");
  if (s < 1 || s >= n) throw InvalidConfig("cs instance: need 1 <= s < n");
  if (!(sigma >= 0.0)) throw InvalidConfig("cs instance: need sigma >= 0");
  Matrix a = orthonormal_rows(m, n, rng);
  Vector truth = Vector::Zero(n);
  for (Index i : rng.sample_subset(n, s)) truth[i] = rng.uniform() < 0.5 ? -1.0 : 1.0;
  const Vector noise = rng.normal_vector(m);
  Vector b = a * truth + sigma * noise;
  return Instance{Family::kCsLeastSquares,
                  Objective::least_squares(std::move(a), std::move(b)),
                  SymmetricSet::full_space(),
                  s,
                  Vector::Zero(n),
                  std::move(truth),
                  rng.seed()};
}

Instance gen_logistic_instance(Index m, Index n, Rng& rng, bool all_positive) {
  if (m < 2 || m % 2 != 0) throw InvalidConfig("logistic instance: m must be even and positive");
  if (n < 2) throw InvalidConfig("logistic instance: need n >= 2");
  const double mu_pos = rng.uniform(0.0, 1.0);
  const double mu_neg = rng.uniform(-1.0, 0.0);
  Matrix samples(m, n);
  Vector labels(m);
  for (Index i = 0; i < m; ++i) {
    const bool positive = i < m / 2;
    const double mu = positive ? mu_pos : mu_neg;
    for (Index j = 0; j < n; ++j) samples(i, j) = mu + rng.normal();
    labels[i] = (positive || all_positive) ? 1.0 : -1.0;
  }
  return Instance{Family::kLogistic,
                  Objective::logistic(std::move(samples), std::move(labels)),
                  SymmetricSet::full_space(),
                  default_sparsity(n),
                  Vector::Zero(n),
                  std::nullopt,
                  rng.seed()};
}

Instance gen_simplex_instance(Index m, Index n, Rng& rng) {
  if (m < 1 || m >= n) throw InvalidConfig("simplex instance: need 1 <= m < n");
  const Index s = default_sparsity(n);
  if (s >= n) throw InvalidConfig("simplex instance: n too small");
  Matrix a = orthonormal_rows(m, n, rng);
  for (Index i = 0; i < m; ++i) a.row(i) *= static_cast<double>((i + 1) * (i + 1));
  Vector z(n);
  for (Index j = 0; j < n; ++j) z[j] = rng.uniform();
  Vector b = a * (z / z.lpNorm<1>());
  Vector x0 = Vector::Zero(n);
  x0.head(s).setConstant(1.0 / static_cast<double>(s));
  return Instance{Family::kSimplexLeastSquares,
                  Objective::least_squares(std::move(a), std::move(b)),
                  SymmetricSet::simplex(1.0),
                  s,
                  std::move(x0),
                  std::nullopt,
                  rng.seed()};
}

SolverConfig default_npg_config(Family family, double lipschitz) {
  switch (family) {
    case Family::kCsLeastSquares: return SolverConfig::with_defaults(lipschitz, 4, 5, 3);
    case Family::kLogistic: return SolverConfig::with_defaults(lipschitz, 2, 3, 2);
    case Family::kSimplexLeastSquares: return SolverConfig::with_defaults(lipschitz, 3, 4, 3);
  }
  throw InvalidConfig("unknown family");
}

Instance make_instance(Family family, const BenchSize& size, std::uint64_t seed, double sigma) {
  Rng rng(seed);
  switch (family) {
    case Family::kCsLeastSquares: return gen_cs_instance(size.m, size.n, size.s, sigma, rng);
    case Family::kLogistic: return gen_logistic_instance(size.m, size.n, rng);
    case Family::kSimplexLeastSquares: return gen_simplex_instance(size.m, size.n, rng);
  }
  throw InvalidConfig("unknown family");
}

BenchRow run_method(const Instance& instance, Method method, const BenchOptions& options,
                    IterateTrace* trace_out) {
  BenchRow row;
  row.family = instance.family;
  row.m = instance.objective.rows();
  row.n = instance.objective.dim();
  row.s = instance.s;
  row.method = method;
  row.seed = instance.seed;
  try {
    const double lipschitz = instance.objective.lipschitz();
    IterateTrace trace;
    if (method == Method::kPg) {
      trace = pg_solve(instance.objective, instance.set, instance.s, instance.x0, 0.995 / lipschitz, options.f_tol,
                       options.max_iter, options.certify);
    } else {
      SolverConfig config = default_npg_config(instance.family, lipschitz);
      config.f_tol = options.f_tol;
      config.max_iter = options.max_iter;
      trace = npg_solve(instance.objective, instance.set, instance.s, instance.x0, config, options.certify);
    }
    row.cardinality = count_nonzero(trace.x_final);
    row.objective = trace.f_final;
    row.time_s = trace.wall_time_seconds;
    row.iterations = trace.iterations;
    if (trace.certificate) {
      row.strong_stationary = trace.certificate->strong;
      row.violation = trace.certificate->worst_violation;
    }
    if (trace_out) *trace_out = std::move(trace);
  } catch (const Error& e) {
    row.error = e.what();
  }
  return row;
}

BenchReport run_benchmark(const BenchOptions& options) {
  BenchReport report;
  for (Family family : options.families) {
    for (const BenchSize& size : options.sizes) {
      for (std::uint64_t seed : options.seeds) {
        std::optional<Instance> instance;
        try {
          instance = make_instance(family, size, seed, options.sigma);
        } catch (const Error& e) {
          for (Method method : options.methods) {
            BenchRow row;
            row.family = family;
            row.m = size.m;
            row.n = size.n;
            row.s = size.s;
            row.method = method;
            row.seed = seed;
            row.error = e.what();
            report.rows.push_back(std::move(row));
          }
          continue;
        }
        for (Method method : options.methods) report.rows.push_back(run_method(*instance, method, options));
      }
    }
  }
  report.summaries = summarize(report.rows);
  return report;
}

std::vector<BenchSummary> summarize(const std::vector<BenchRow>& rows) {
  auto median = [](std::vector<double> v) {
    if (v.empty()) return std::numeric_limits<double>::quiet_NaN();
    std::sort(v.begin(), v.end());
    const std::size_t mid = v.size() / 2;
    return v.size() % 2 == 1 ? v[mid] : 0.5 * (v[mid - 1] + v[mid]);
  };
  struct Group {
    BenchSummary summary;
    std::vector<double> cardinality, objective, time;
  };
  std::vector<Group> groups;
  for (const BenchRow& row : rows) {
    auto it = std::find_if(groups.begin(), groups.end(), [&](const Group& g) {
      const BenchSummary& s = g.summary;
      return s.family == row.family && s.m == row.m && s.n == row.n && s.s == row.s && s.method == row.method;
    });
    if (it == groups.end()) {
      Group g;
      g.summary.family = row.family;
      g.summary.m = row.m;
      g.summary.n = row.n;
      g.summary.s = row.s;
      g.summary.method = row.method;
      groups.push_back(std::move(g));
      it = groups.end() - 1;
    }
    if (!row.error.empty()) continue;
    ++it->summary.runs;
    if (row.strong_stationary) ++it->summary.strong_stationary;
    it->cardinality.push_back(static_cast<double>(row.cardinality));
    it->objective.push_back(row.objective);
    it->time.push_back(row.time_s);
  }
  std::vector<BenchSummary> out;
  for (Group& g : groups) {
    g.summary.median_cardinality = median(std::move(g.cardinality));
    g.summary.median_objective = median(std::move(g.objective));
    g.summary.median_time_s = median(std::move(g.time));
    out.push_back(g.summary);
  }
  return out;
}

}  // namespace npg
