#include "npg/sparse_projection.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace npg {

namespace {

void check_sparsity(Index s, Index n) {
  if (s < 1 || s > n - 1) throw InvalidConfig("sparsity s must satisfy 1 <= s <= n-1");
}

SparseProjection project_on_support(const SymmetricSet& set, const Vector& x, Support support) {
  std::sort(support.begin(), support.end());
  const Vector x_t = gather(x, support);
  const Vector y_t = set.project_sub(static_cast<Index>(support.size()), x_t);
  return {scatter(y_t, support, x.size()), std::move(support), false};
}

}  // namespace

SparseProjection project_sparse(const SymmetricSet& set, Index s, const Vector& x) {
  check_sparsity(s, x.size());
  const auto sigma = sorting_permutation(set.p(x));
  Support top(sigma.begin(), sigma.begin() + s);
  return project_on_support(set, x, std::move(top));
}

double default_unique_tol(const Vector& x) {
  return 1e-10 * (1.0 + (x.size() ? x.cwiseAbs().maxCoeff() : 0.0));
}

bool certify_unique(const SymmetricSet& set, Index s, const Vector& x, const SparseProjection& y,
                    double tol) {
  const Support on = support_of(y.point);
  if (static_cast<Index>(on.size()) < s) return true;
  const Vector px = set.p(x);
  double min_on = std::numeric_limits<double>::infinity();
  for (Index i : on) min_on = std::min(min_on, px[i]);
  double max_off = -std::numeric_limits<double>::infinity();
  for (Index j : complement(on, x.size())) max_off = std::max(max_off, px[j]);
  return min_on - max_off > tol;
}

std::vector<SparseProjection> brute_force_project(const SymmetricSet& set, Index s, const Vector& x) {
  const Index n = x.size();
  check_sparsity(s, n);
  if (n > 20) throw GuardViolation("brute_force_project: n > 20");
  if (binomial_capped(static_cast<std::uint64_t>(n), static_cast<std::uint64_t>(s), 1'000'001) > 1'000'000) {
    throw GuardViolation("brute_force_project: more than 1e6 supports");
  }

  std::vector<SparseProjection> candidates;
  std::vector<double> distances;
  for_each_subset(n, s, [&](const Support& t) {
    SparseProjection candidate = project_on_support(set, x, t);
    distances.push_back((candidate.point - x).squaredNorm());
    candidates.push_back(std::move(candidate));
  });

  const double best = *std::min_element(distances.begin(), distances.end());
  const double cutoff = best + 1e-10 * std::max(best, 1e-300);
  std::vector<SparseProjection> minimizers;
  for (std::size_t k = 0; k < candidates.size(); ++k) {
    if (distances[k] > cutoff) continue;
    const bool duplicate = std::any_of(minimizers.begin(), minimizers.end(), [&](const SparseProjection& m) {
      return (m.point - candidates[k].point).lpNorm<Eigen::Infinity>() <= 1e-12;
    });
    if (!duplicate) minimizers.push_back(std::move(candidates[k]));
  }
  return minimizers;
}

}  // namespace npg
