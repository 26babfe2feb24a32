#pragma once

#include <optional>
#include <vector>

#include "npg/core.hpp"
#include "npg/objective.hpp"
#include "npg/symmetric_set.hpp"

namespace npg {

/// Largest minimizer and minimum value of gamma(t; x) over [0, Tbar].
struct BetaTheta {
  double beta = 0.0;
  double theta = 0.0;
};

/// Outcome of the stationarity checks at a point.
struct StationarityReport {
  bool general = false;
  bool strong = false;
  bool coordinatewise = false;
  /// False when the coordinatewise check sampled super supports instead of enumerating them.
  bool coordinatewise_exhaustive = true;
  /// Largest ||proj(x - t grad) - x|| seen on the grid.
  double worst_violation = 0.0;
  double objective = 0.0;
  /// A distinct projection point found when the strong condition fails.
  std::optional<Vector> witness;
  double witness_objective = 0.0;
  double witness_stepsize = 0.0;
};

/// Gap between the smallest on-support and the largest off-support entry of p(x - t grad).
/// Throws DegenerateInput when x is zero or has no zero entry.
double gamma(const SymmetricSet& set, const Vector& x, const Vector& grad, double t);

/// Minimizes gamma over [0, Tbar] in O(||x||_0).
///
/// Nonnegative sets: gamma is concave in t, so only the endpoints matter.
/// Sign-free sets: gamma is the minimum over on-support i of the convex
/// piecewise linear |x_i - t g_i| - alpha t, whose minimum over [0, Tbar] is
/// attained at 0, at the kink x_i / g_i, or at Tbar. Ties resolve to the
/// largest t. For x = 0 or ||x||_0 = n this returns (Tbar, 0).
BetaTheta beta_theta(const SymmetricSet& set, const Vector& x, const Vector& grad, double tbar);

/// `points` uniformly spaced values covering [0, tbar], both endpoints included.
std::vector<double> uniform_grid(double tbar, int points = 50);

/// Membership of x in proj(x - t grad) for every t on the grid, tested by
/// distance equality with the computed projection.
bool check_general_stationary(const Objective& obj, const SymmetricSet& set, Index s, const Vector& x,
                              const std::vector<double>& t_grid, double tol);

/// x equals the projection of x - t grad for every t on the grid, and that
/// projection is certified to be a single point. Fills the general, strong,
/// worst_violation and witness fields of the report.
StationarityReport check_strong_stationary(const Objective& obj, const SymmetricSet& set, Index s,
                                           const Vector& x, const std::vector<double>& t_grid, double tol);

struct CoordinatewiseCheck {
  bool stationary = false;
  bool exhaustive = true;
};

/// Fixed point on every s-super support for some positive grid stepsize, plus
/// the one-coordinate swap inequality.
///
/// Super supports are enumerated when there are at most 1e4 of them;
/// otherwise 1000 are sampled with a fixed seed and `exhaustive` is false.
/// A false result on the grid does not rule out the condition for other t.
CoordinatewiseCheck check_coordinatewise(const Objective& obj, const SymmetricSet& set, Index s, const Vector& x,
                                         const std::vector<double>& t_grid, double tol);

/// Runs all three checks.
StationarityReport certify(const Objective& obj, const SymmetricSet& set, Index s, const Vector& x,
                           const std::vector<double>& t_grid, double tol);

}  // namespace npg
