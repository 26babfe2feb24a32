#pragma once

#include <string>
#include <string_view>

#include "npg/core.hpp"

namespace npg {

/// Whether the set lies in the nonnegative orthant or is closed under sign flips.
enum class SetKind { kNonnegative, kSignFree };

/// A permutation-invariant closed convex set Omega from a fixed catalog.
///
/// Every member restricts to a set of the same shape on any coordinate subset,
/// so the restriction to an index set T only depends on |T|.
class SymmetricSet {
 public:
  enum class Variant {
    kFullSpace,
    kNonnegOrthant,
    kNonnegSimplex,  // {x >= 0, sum x = r}
    kL1Ball,
    kL2Ball,
    kNonnegL1Ball,   // {x >= 0, sum x <= r}
    kNonnegL2Ball,
  };

  static SymmetricSet full_space() { return SymmetricSet(Variant::kFullSpace, 1.0); }
  static SymmetricSet nonneg_orthant() { return SymmetricSet(Variant::kNonnegOrthant, 1.0); }
  static SymmetricSet simplex(double radius = 1.0) { return SymmetricSet(Variant::kNonnegSimplex, radius); }
  static SymmetricSet l1_ball(double radius = 1.0) { return SymmetricSet(Variant::kL1Ball, radius); }
  static SymmetricSet l2_ball(double radius = 1.0) { return SymmetricSet(Variant::kL2Ball, radius); }
  static SymmetricSet nonneg_l1_ball(double radius = 1.0) { return SymmetricSet(Variant::kNonnegL1Ball, radius); }
  static SymmetricSet nonneg_l2_ball(double radius = 1.0) { return SymmetricSet(Variant::kNonnegL2Ball, radius); }

  /// Parses `full | nonneg | simplex[:r] | l1ball:<r> | l2ball:<r> | nonneg-l1ball:<r> | nonneg-l2ball:<r>`.
  /// The radius may be omitted and defaults to 1.
  static SymmetricSet parse(std::string_view text);

  /// Canonical text form, accepted by parse().
  std::string name() const;

  Variant variant() const { return variant_; }
  double radius() const { return radius_; }
  SetKind kind() const;

  /// x for nonnegative sets, |x| for sign-free sets.
  Vector p(const Vector& x) const;

  /// Euclidean projection onto Omega.
  Vector project(const Vector& x) const;

  /// Projection onto the restriction Omega_T with |T| = t_size; x_t has length t_size.
  Vector project_sub(Index t_size, const Vector& x_t) const;

  /// Membership test with absolute tolerance on each defining constraint.
  bool contains(const Vector& x, double tol = 1e-12) const;

  friend bool operator==(const SymmetricSet&, const SymmetricSet&) = default;

 private:
  SymmetricSet(Variant variant, double radius);

  Variant variant_;
  double radius_;
};

/// Projection of v onto {x >= 0, sum x = radius} by sort and threshold.
Vector project_onto_simplex(const Vector& v, double radius);

/// Projection of v onto {||x||_1 <= radius}.
Vector project_onto_l1_ball(const Vector& v, double radius);

}  // namespace npg
