#include "npg/subroutines.hpp"

#include <algorithm>
#include <limits>

namespace npg {

namespace {

void require_nondegenerate(const Support& on, Index n, const char* who) {
  if (on.empty() || static_cast<Index>(on.size()) == n) {
    throw DegenerateInput(std::string(who) + ": requires 0 < ||x||_0 < n");
  }
}

// Indices in `among` where values attains its minimum (or maximum), ascending.
Support arg_extreme(const Vector& values, const Support& among, bool want_max) {
  double best = want_max ? -std::numeric_limits<double>::infinity() : std::numeric_limits<double>::infinity();
  for (Index i : among) best = want_max ? std::max(best, values[i]) : std::min(best, values[i]);
  Support out;
  for (Index i : among) {
    if (values[i] == best) out.push_back(i);
  }
  return out;
}

}  // namespace

SwapPair select_swap_pair(const SymmetricSet& set, const Vector& x, const Vector& grad) {
  const Support on = support_of(x);
  require_nondegenerate(on, x.size(), "swap");
  const Vector px = set.p(x);
  const Vector pg = set.p(-grad);
  const Support weakest = arg_extreme(px, on, false);
  const Support from = arg_extreme(pg, weakest, false);
  const Support to = arg_extreme(pg, complement(on, x.size()), true);
  return {from.front(), to.front()};
}

Vector transplant(const Vector& x, SwapPair pair, bool flip) {
  Vector y = x;
  const double value = x[pair.from];
  y[pair.from] = 0.0;
  y[pair.to] = flip ? -value : value;
  return y;
}

Vector coordinate_swap(const Objective& obj, const SymmetricSet& set, const Vector& x) {
  return coordinate_swap(obj, set, x, obj.grad(x));
}

Vector coordinate_swap(const Objective& obj, const SymmetricSet& set, const Vector& x, const Vector& grad) {
  const SwapPair pair = select_swap_pair(set, x, grad);
  const double fx = obj.eval(x);
  Vector plus = transplant(x, pair, false);
  const double f_plus = obj.eval(plus);
  if (set.kind() == SetKind::kNonnegative) {
    return fx > f_plus ? plus : x;
  }
  Vector minus = transplant(x, pair, true);
  const double f_minus = obj.eval(minus);
  if (fx > std::min(f_plus, f_minus)) {
    return f_plus <= f_minus ? plus : minus;
  }
  return x;
}

Vector change_support(const Objective& obj, const SymmetricSet& set, Index s, const Vector& x, double t) {
  return change_support(set, s, x, obj.grad(x), t);
}

Vector change_support(const SymmetricSet& set, Index s, const Vector& x, const Vector& grad, double t) {
  const Index n = x.size();
  const Support on = support_of(x);
  require_nondegenerate(on, n, "change_support");
  if (static_cast<Index>(on.size()) > s) throw InfeasiblePoint("change_support: ||x||_0 exceeds s");

  const Vector a = x - t * grad;
  const Vector pa = set.p(a);
  const Support drop = arg_extreme(pa, on, false);
  const Support add = arg_extreme(pa, complement(on, n), true);
  const std::size_t k = std::min(drop.size(), add.size());

  Support next;
  std::set_difference(on.begin(), on.end(), drop.begin(), drop.begin() + static_cast<std::ptrdiff_t>(k),
                      std::back_inserter(next));
  next.insert(next.end(), add.begin(), add.begin() + static_cast<std::ptrdiff_t>(k));
  std::sort(next.begin(), next.end());

  const Vector y_s = set.project_sub(static_cast<Index>(next.size()), gather(a, next));
  return scatter(y_s, next, n);
}

}  // namespace npg
