#pragma once

#include "npg/core.hpp"
#include "npg/objective.hpp"
#include "npg/symmetric_set.hpp"

namespace npg {

/// Coordinates picked for a one-coordinate swap at x.
///
/// `from` minimizes p(-grad) among the on-support indices where p(x) is
/// smallest; `to` maximizes p(-grad) off the support. Ties go to the lowest
/// index. Requires 0 < ||x||_0 < n.
struct SwapPair {
  Index from = 0;
  Index to = 0;
};

SwapPair select_swap_pair(const SymmetricSet& set, const Vector& x, const Vector& grad);

/// Moves the value at `from` to `to`; with `flip` the moved value changes sign.
Vector transplant(const Vector& x, SwapPair pair, bool flip = false);

/// Returns the swapped point if it strictly lowers f, otherwise x itself.
///
/// Sign-free sets try both signs for the moved value and prefer the
/// sign-preserving move on ties.
Vector coordinate_swap(const Objective& obj, const SymmetricSet& set, const Vector& x);
Vector coordinate_swap(const Objective& obj, const SymmetricSet& set, const Vector& x, const Vector& grad);

/// Exchanges the weakest on-support coordinates of a = x - t grad for the
/// strongest off-support ones, then projects a onto the new support.
/// The result has a different support than x.
Vector change_support(const Objective& obj, const SymmetricSet& set, Index s, const Vector& x, double t);
Vector change_support(const SymmetricSet& set, Index s, const Vector& x, const Vector& grad, double t);

}  // namespace npg
