#include "npg/objective.hpp"

#include <cmath>

namespace npg {

std::string to_string(Loss loss) {
  return loss == Loss::kLeastSquares ? "least-squares" : "logistic";
}

Loss parse_loss(const std::string& text) {
  if (text == "least-squares") return Loss::kLeastSquares;
  if (text == "logistic") return Loss::kLogistic;
  throw InvalidConfig("unknown loss '" + text + "'");
}

double softplus(double z) {
  return z > 0.0 ? z + std::log1p(std::exp(-z)) : std::log1p(std::exp(z));
}

double sigmoid(double z) {
  if (z >= 0.0) return 1.0 / (1.0 + std::exp(-z));
  const double e = std::exp(z);
  return e / (1.0 + e);
}

double squared_spectral_norm(const Matrix& m, int max_iter, double rel_tol) {
  if (m.size() == 0) return 0.0;
  // fixed, non-degenerate start so the result is reproducible
  Vector v(m.cols());
  for (Index j = 0; j < v.size(); ++j) v[j] = 1.0 + 0.5 * std::sin(static_cast<double>(j) + 1.0);
  v.normalize();
  double estimate = 0.0;
  for (int it = 0; it < max_iter; ++it) {
    Vector w = m.transpose() * (m * v);
    const double next = v.dot(w);
    const double norm = w.norm();
    if (norm == 0.0) return 0.0;
    v = w / norm;
    if (it > 0 && std::abs(next - estimate) <= rel_tol * std::abs(next)) {
      estimate = next;
      break;
    }
    estimate = next;
  }
  // Rayleigh quotient of the final iterate
  return std::max(estimate, (m * v).squaredNorm());
}

Objective::Objective(Loss loss, Matrix a, Vector b) : loss_(loss), a_(std::move(a)), b_(std::move(b)) {
  if (a_.rows() != b_.size()) throw DimensionMismatch("objective: rows of A differ from length of b");
  if (!a_.allFinite() || !b_.allFinite()) throw InvalidConfig("objective: data must be finite");
}

Objective Objective::least_squares(Matrix a, Vector b) {
  Objective obj(Loss::kLeastSquares, std::move(a), std::move(b));
  obj.lipschitz_ = squared_spectral_norm(obj.a_);
  return obj;
}

Objective Objective::logistic(Matrix samples, Vector labels) {
  for (Index i = 0; i < labels.size(); ++i) {
    if (labels[i] != 1.0 && labels[i] != -1.0) throw InvalidConfig("logistic: labels must be +1 or -1");
  }
  Objective obj(Loss::kLogistic, std::move(samples), std::move(labels));
  const Matrix signed_rows = obj.b_.asDiagonal() * obj.a_;
  obj.lipschitz_ = squared_spectral_norm(signed_rows);
  return obj;
}

void Objective::check_dim(const Vector& x) const {
  if (x.size() != a_.cols()) throw DimensionMismatch("objective: x has wrong length");
}

Vector Objective::apply(const Vector& x) const {
  const Support on = support_of(x);
  if (4 * static_cast<Index>(on.size()) >= x.size()) return a_ * x;
  Vector ax = Vector::Zero(a_.rows());
  for (Index j : on) ax.noalias() += x[j] * a_.col(j);
  return ax;
}

double Objective::loss_from_product(const Vector& ax) const {
  if (loss_ == Loss::kLeastSquares) return 0.5 * (ax - b_).squaredNorm();
  double total = 0.0;
  for (Index i = 0; i < ax.size(); ++i) total += softplus(-b_[i] * ax[i]);
  return total;
}

Vector Objective::grad_from_product(const Vector& ax) const {
  if (loss_ == Loss::kLeastSquares) return a_.transpose() * (ax - b_);
  Vector weights(ax.size());
  for (Index i = 0; i < ax.size(); ++i) weights[i] = -b_[i] * sigmoid(-b_[i] * ax[i]);
  return a_.transpose() * weights;
}

double Objective::eval(const Vector& x) const {
  check_dim(x);
  return loss_from_product(apply(x));
}

Vector Objective::grad(const Vector& x) const {
  check_dim(x);
  return grad_from_product(apply(x));
}

double Objective::eval_grad(const Vector& x, Vector& grad) const {
  check_dim(x);
  const Vector ax = apply(x);
  grad = grad_from_product(ax);
  return loss_from_product(ax);
}

}  // namespace npg
