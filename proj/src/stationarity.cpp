#include "npg/stationarity.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "npg/sparse_projection.hpp"
#include "npg/subroutines.hpp"

namespace npg {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

bool is_degenerate(const Support& on, Index n) { return on.empty() || static_cast<Index>(on.size()) == n; }

double checker_support_tol(const Vector& x) {
  return 1e-12 * (1.0 + (x.size() ? x.cwiseAbs().maxCoeff() : 0.0));
}

// Brute force is affordable for confirming a single projection point.
bool small_enough_for_brute_force(Index n, Index s) {
  return n <= 20 && binomial_capped(static_cast<std::uint64_t>(n), static_cast<std::uint64_t>(s), 10'001) <= 10'000;
}

}  // namespace

double gamma(const SymmetricSet& set, const Vector& x, const Vector& grad, double t) {
  const Support on = support_of(x);
  if (is_degenerate(on, x.size())) throw DegenerateInput("gamma: requires 0 < ||x||_0 < n");
  const Vector pa = set.p(x - t * grad);
  double min_on = kInf;
  for (Index i : on) min_on = std::min(min_on, pa[i]);
  double max_off = -kInf;
  for (Index j : complement(on, x.size())) max_off = std::max(max_off, pa[j]);
  return min_on - max_off;
}

BetaTheta beta_theta(const SymmetricSet& set, const Vector& x, const Vector& grad, double tbar) {
  if (!(tbar > 0.0)) throw InvalidConfig("beta_theta: Tbar must be positive");
  const Support on = support_of(x);
  if (is_degenerate(on, x.size())) return {tbar, 0.0};

  if (set.kind() == SetKind::kNonnegative) {
    const double at_zero = gamma(set, x, grad, 0.0);
    const double at_end = gamma(set, x, grad, tbar);
    if (at_end <= at_zero) return {tbar, at_end};
    return {0.0, at_zero};
  }

  // alpha = largest |grad_j| off the support
  double alpha = -kInf;
  for (Index j : complement(on, x.size())) alpha = std::max(alpha, std::abs(grad[j]));

  BetaTheta best{0.0, kInf};
  for (Index i : on) {
    const auto phi = [&](double t) { return std::abs(x[i] - t * grad[i]) - alpha * t; };
    double candidates[3] = {0.0, tbar, tbar};
    if (grad[i] != 0.0) candidates[2] = std::clamp(x[i] / grad[i], 0.0, tbar);
    for (double t : candidates) {
      const double value = phi(t);
      if (value < best.theta || (value == best.theta && t > best.beta)) best = {t, value};
    }
  }
  return best;
}

std::vector<double> uniform_grid(double tbar, int points) {
  if (points < 2) throw InvalidConfig("uniform_grid: need at least 2 points");
  std::vector<double> grid(static_cast<std::size_t>(points));
  for (int k = 0; k < points; ++k) grid[static_cast<std::size_t>(k)] = tbar * k / (points - 1);
  grid.back() = tbar;
  return grid;
}

bool check_general_stationary(const Objective& obj, const SymmetricSet& set, Index s, const Vector& x,
                              const std::vector<double>& t_grid, double tol) {
  const Vector g = obj.grad(x);
  for (double t : t_grid) {
    const Vector a = x - t * g;
    const Vector y = project_sparse(set, s, a).point;
    if ((y - x).norm() <= tol) continue;
    if (std::abs((x - a).squaredNorm() - (y - a).squaredNorm()) > tol) return false;
  }
  return true;
}

StationarityReport check_strong_stationary(const Objective& obj, const SymmetricSet& set, Index s,
                                           const Vector& x, const std::vector<double>& t_grid, double tol) {
  StationarityReport report;
  report.general = true;
  report.strong = true;
  report.objective = obj.eval(x);
  const Vector g = obj.grad(x);
  const bool brute_ok = small_enough_for_brute_force(x.size(), s);

  auto offer_witness = [&](const Vector& candidate, double t) {
    if (report.witness || t <= 0.0) return;
    report.witness = candidate;
    report.witness_objective = obj.eval(candidate);
    report.witness_stepsize = t;
  };

  for (double t : t_grid) {
    const Vector a = x - t * g;
    SparseProjection y = project_sparse(set, s, a);
    const double violation = (y.point - x).norm();
    report.worst_violation = std::max(report.worst_violation, violation);

    if (violation > tol) {
      report.strong = false;
      if (std::abs((x - a).squaredNorm() - (y.point - a).squaredNorm()) > tol) report.general = false;
      offer_witness(y.point, t);
      continue;
    }
    if (certify_unique(set, s, a, y, default_unique_tol(a))) continue;
    if (brute_ok) {
      const auto minimizers = brute_force_project(set, s, a);
      if (minimizers.size() == 1) continue;
      for (const auto& m : minimizers) {
        if ((m.point - x).norm() > tol) {
          offer_witness(m.point, t);
          break;
        }
      }
    }
    report.strong = false;
  }
  return report;
}

CoordinatewiseCheck check_coordinatewise(const Objective& obj, const SymmetricSet& set, Index s, const Vector& x,
                                         const std::vector<double>& t_grid, double tol) {
  const Index n = x.size();
  CoordinatewiseCheck result;
  const Support on = support_of(x, checker_support_tol(x));
  const auto nnz = static_cast<Index>(on.size());
  if (nnz > s) return result;

  const Vector g = obj.grad(x);
  const Support off = complement(on, n);
  const Index extra = s - nnz;

  // super supports: supp(x) plus `extra` off-support indices
  std::vector<Support> supports;
  const std::uint64_t count =
      binomial_capped(static_cast<std::uint64_t>(off.size()), static_cast<std::uint64_t>(extra), 10'001);
  auto add_super = [&](const Support& picks) {
    Support t = on;
    for (Index p : picks) t.push_back(off[static_cast<std::size_t>(p)]);
    std::sort(t.begin(), t.end());
    supports.push_back(std::move(t));
  };
  if (count <= 10'000) {
    for_each_subset(static_cast<Index>(off.size()), extra, add_super);
  } else {
    result.exhaustive = false;
    Rng rng(0);
    for (int k = 0; k < 1000; ++k) add_super(rng.sample_subset(static_cast<Index>(off.size()), extra));
  }

  auto fixed_on_all = [&](double t) {
    for (const Support& t_set : supports) {
      const Vector x_t = gather(x, t_set);
      const Vector target = x_t - t * gather(g, t_set);
      const Vector y_t = set.project_sub(static_cast<Index>(t_set.size()), target);
      if ((y_t - x_t).norm() > tol) return false;
    }
    return true;
  };
  bool fixed = false;
  bool any_positive = false;
  for (double t : t_grid) {
    if (t <= 0.0) continue;
    any_positive = true;
    if (fixed_on_all(t)) {
      fixed = true;
      break;
    }
  }
  if (!any_positive) fixed = fixed_on_all(0.0);
  if (!fixed) return result;

  if (nnz > 0 && nnz < n) {
    // the swap pair is defined on the thresholded point
    Vector x_clean = scatter(gather(x, on), on, n);
    const SwapPair pair = select_swap_pair(set, x_clean, g);
    const double fx = obj.eval(x);
    double swapped = obj.eval(transplant(x_clean, pair, false));
    if (set.kind() == SetKind::kSignFree) swapped = std::min(swapped, obj.eval(transplant(x_clean, pair, true)));
    if (fx > swapped + tol) return result;
  }
  result.stationary = true;
  return result;
}

StationarityReport certify(const Objective& obj, const SymmetricSet& set, Index s, const Vector& x,
                           const std::vector<double>& t_grid, double tol) {
  StationarityReport report = check_strong_stationary(obj, set, s, x, t_grid, tol);
  const CoordinatewiseCheck cw = check_coordinatewise(obj, set, s, x, t_grid, tol);
  report.coordinatewise = cw.stationary;
  report.coordinatewise_exhaustive = cw.exhaustive;
  return report;
}

}  // namespace npg
