#pragma once

#include <string>

#include "npg/core.hpp"

namespace npg {

enum class Loss { kLeastSquares, kLogistic };

std::string to_string(Loss loss);
Loss parse_loss(const std::string& text);

/// Smooth convex loss with a Lipschitz continuous gradient.
///
///   least squares:  f(x) = 1/2 ||A x - b||^2
///   logistic:       f(x) = sum_i log(1 + exp(-b_i a_i^T x)),  b_i in {-1, +1}
///
/// The Lipschitz constant is computed once at construction as the squared
/// largest singular value of A (least squares) or of the matrix with rows
/// b_i a_i (logistic). For the logistic loss this is four times the tight
/// bound; the looser value is kept deliberately so stepsizes scale with it.
class Objective {
 public:
  static Objective least_squares(Matrix a, Vector b);
  static Objective logistic(Matrix samples, Vector labels);

  Loss loss() const { return loss_; }
  const Matrix& matrix() const { return a_; }
  const Vector& rhs() const { return b_; }
  Index rows() const { return a_.rows(); }
  Index dim() const { return a_.cols(); }
  double lipschitz() const { return lipschitz_; }

  double eval(const Vector& x) const;
  Vector grad(const Vector& x) const;
  /// f(x) and grad f(x) sharing one product A x.
  double eval_grad(const Vector& x, Vector& grad) const;

 private:
  Objective(Loss loss, Matrix a, Vector b);
  void check_dim(const Vector& x) const;
  /// A x, touching only the columns in supp(x) when x is sparse.
  Vector apply(const Vector& x) const;
  double loss_from_product(const Vector& ax) const;
  Vector grad_from_product(const Vector& ax) const;

  Loss loss_;
  Matrix a_;
  Vector b_;
  double lipschitz_ = 0.0;
};

/// Squared largest singular value of m by power iteration on m^T m.
///
/// Stops after max_iter sweeps or when the estimate changes by less than
/// rel_tol relative.
double squared_spectral_norm(const Matrix& m, int max_iter = 2000, double rel_tol = 1e-13);

/// log(1 + exp(z)) without overflow.
double softplus(double z);

/// 1 / (1 + exp(-z)) without overflow.
double sigmoid(double z);

}  // namespace npg
