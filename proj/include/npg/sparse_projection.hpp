#pragma once

#include <vector>

#include "npg/core.hpp"
#include "npg/symmetric_set.hpp"

namespace npg {

/// A member of the projection set of x onto {||y||_0 <= s} ∩ Omega.
struct SparseProjection {
  Vector point;
  Support chosen_support;         // |chosen_support| == s; point is zero off it
  bool certified_unique = false;  // set by certify_unique(), never by project_sparse()
};

/// Projects x onto C_s ∩ Omega.
///
/// The support is the first s entries of the stable sorting permutation of
/// p(x); on it, x is projected onto the restriction of Omega. When several
/// supports tie, the lowest indices win.
SparseProjection project_sparse(const SymmetricSet& set, Index s, const Vector& x);

/// Default tolerance for the strict gap test in certify_unique().
double default_unique_tol(const Vector& x);

/// Sufficient test for the projection of x to be a single point.
///
/// True if ||y||_0 < s, or if the smallest p(x) value on supp(y) beats the
/// largest p(x) value off supp(y) by more than tol. False means "not
/// certified", not "non-unique".
bool certify_unique(const SymmetricSet& set, Index s, const Vector& x, const SparseProjection& y,
                    double tol);

/// Exhaustive projection over all supports of size s.
///
/// Returns every distinct minimizer of ||y - x||^2 within relative tolerance
/// 1e-10 of the best distance. Intended as a test oracle on small inputs.
/// Throws GuardViolation if n > 20 or C(n, s) > 1e6.
std::vector<SparseProjection> brute_force_project(const SymmetricSet& set, Index s, const Vector& x);

/// Calls fn(T) for every size-k subset T of {0..n-1} in lexicographic order.
template <typename Fn>
void for_each_subset(Index n, Index k, Fn&& fn) {
  if (k < 0 || k > n) return;
  Support subset(static_cast<std::size_t>(k));
  for (Index i = 0; i < k; ++i) subset[static_cast<std::size_t>(i)] = i;
  while (true) {
    fn(static_cast<const Support&>(subset));
    Index i = k - 1;
    while (i >= 0 && subset[static_cast<std::size_t>(i)] == n - k + i) --i;
    if (i < 0) return;
    ++subset[static_cast<std::size_t>(i)];
    for (Index j = i + 1; j < k; ++j)
      subset[static_cast<std::size_t>(j)] = subset[static_cast<std::size_t>(j - 1)] + 1;
  }
}

}  // namespace npg
