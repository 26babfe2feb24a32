#include "npg/symmetric_set.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <functional>
#include <limits>

namespace npg {

namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();

double parse_radius(std::string_view text) {
  double value = 0.0;
  const auto* first = text.data();
  const auto* last = text.data() + text.size();
  auto [ptr, ec] = std::from_chars(first, last, value);
  if (ec != std::errc() || ptr != last || !(value > 0.0) || !std::isfinite(value)) {
    throw InvalidConfig("invalid set radius '" + std::string(text) + "'");
  }
  return value;
}

std::string format_radius(double r) {
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), r);
  return std::string(buf, ptr);
}

Vector clip_nonneg(const Vector& x) { return x.cwiseMax(0.0); }

Vector scale_into_l2_ball(const Vector& x, double radius) {
  const double norm = x.norm();
  if (norm <= radius) return x;
  return x * (radius / norm);
}

}  // namespace

Vector project_onto_simplex(const Vector& v, double radius) {
  const Index n = v.size();
  if (n == 0) throw DimensionMismatch("simplex projection of an empty vector");
  // already on the simplex up to rounding in the sum
  if ((v.array() >= 0.0).all() &&
      std::abs(v.sum() - radius) <= 4.0 * kEps * static_cast<double>(n) * radius) {
    return v;
  }
  std::vector<double> sorted(v.data(), v.data() + n);
  std::sort(sorted.begin(), sorted.end(), std::greater<>());
  double cumulative = 0.0;
  double theta = 0.0;
  for (Index k = 0; k < n; ++k) {
    cumulative += sorted[static_cast<std::size_t>(k)];
    const double candidate = (cumulative - radius) / static_cast<double>(k + 1);
    if (sorted[static_cast<std::size_t>(k)] - candidate > 0.0) theta = candidate;
  }
  return (v.array() - theta).cwiseMax(0.0).matrix();
}

Vector project_onto_l1_ball(const Vector& v, double radius) {
  if (v.lpNorm<1>() <= radius) return v;
  const Vector magnitude = project_onto_simplex(v.cwiseAbs(), radius);
  Vector out(v.size());
  for (Index i = 0; i < v.size(); ++i) out[i] = v[i] < 0.0 ? -magnitude[i] : magnitude[i];
  return out;
}

SymmetricSet::SymmetricSet(Variant variant, double radius) : variant_(variant), radius_(radius) {
  if (!(radius > 0.0) || !std::isfinite(radius)) throw InvalidConfig("set radius must be positive and finite");
}

SymmetricSet SymmetricSet::parse(std::string_view text) {
  std::string_view head = text;
  std::string_view tail;
  if (auto colon = text.find(':'); colon != std::string_view::npos) {
    head = text.substr(0, colon);
    tail = text.substr(colon + 1);
  }
  const double r = tail.empty() ? 1.0 : parse_radius(tail);
  if (head == "full" && tail.empty()) return full_space();
  if (head == "nonneg" && tail.empty()) return nonneg_orthant();
  if (head == "simplex") return simplex(r);
  if (head == "l1ball") return l1_ball(r);
  if (head == "l2ball") return l2_ball(r);
  if (head == "nonneg-l1ball") return nonneg_l1_ball(r);
  if (head == "nonneg-l2ball") return nonneg_l2_ball(r);
  throw InvalidConfig("unknown set '" + std::string(text) + "'");
}

std::string SymmetricSet::name() const {
  const std::string r = format_radius(radius_);
  switch (variant_) {
    case Variant::kFullSpace: return "full";
    case Variant::kNonnegOrthant: return "nonneg";
    case Variant::kNonnegSimplex: return "simplex:" + r;
    case Variant::kL1Ball: return "l1ball:" + r;
    case Variant::kL2Ball: return "l2ball:" + r;
    case Variant::kNonnegL1Ball: return "nonneg-l1ball:" + r;
    case Variant::kNonnegL2Ball: return "nonneg-l2ball:" + r;
  }
  return "unknown";
}

SetKind SymmetricSet::kind() const {
  switch (variant_) {
    case Variant::kFullSpace:
    case Variant::kL1Ball:
    case Variant::kL2Ball:
      return SetKind::kSignFree;
    default:
      return SetKind::kNonnegative;
  }
}

Vector SymmetricSet::p(const Vector& x) const {
  return kind() == SetKind::kNonnegative ? x : Vector(x.cwiseAbs());
}

Vector SymmetricSet::project(const Vector& x) const {
  switch (variant_) {
    case Variant::kFullSpace: return x;
    case Variant::kNonnegOrthant: return clip_nonneg(x);
    case Variant::kNonnegSimplex: return project_onto_simplex(x, radius_);
    case Variant::kL1Ball: return project_onto_l1_ball(x, radius_);
    case Variant::kL2Ball: return scale_into_l2_ball(x, radius_);
    case Variant::kNonnegL1Ball: {
      Vector clipped = clip_nonneg(x);
      if (clipped.sum() <= radius_) return clipped;
      return project_onto_simplex(clipped, radius_);
    }
    case Variant::kNonnegL2Ball: return scale_into_l2_ball(clip_nonneg(x), radius_);
  }
  return x;
}

Vector SymmetricSet::project_sub(Index t_size, const Vector& x_t) const {
  if (t_size < 1) throw DimensionMismatch("project_sub: t_size must be at least 1");
  if (x_t.size() != t_size) throw DimensionMismatch("project_sub: x_T length differs from t_size");
  return project(x_t);
}

bool SymmetricSet::contains(const Vector& x, double tol) const {
  if (!x.allFinite()) return false;
  const bool nonneg = x.size() == 0 || x.minCoeff() >= -tol;
  switch (variant_) {
    case Variant::kFullSpace: return true;
    case Variant::kNonnegOrthant: return nonneg;
    case Variant::kNonnegSimplex: return nonneg && std::abs(x.sum() - radius_) <= tol;
    case Variant::kL1Ball: return x.lpNorm<1>() <= radius_ + tol;
    case Variant::kL2Ball: return x.norm() <= radius_ + tol;
    case Variant::kNonnegL1Ball: return nonneg && x.sum() <= radius_ + tol;
    case Variant::kNonnegL2Ball: return nonneg && x.norm() <= radius_ + tol;
  }
  return false;
}

}  // namespace npg
