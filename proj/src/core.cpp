#include "npg/core.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace npg {

Support support_of(const Vector& x, double tol) {
  Support out;
  for (Index i = 0; i < x.size(); ++i) {
    if (std::abs(x[i]) > tol) out.push_back(i);
  }
  return out;
}

Index count_nonzero(const Vector& x, double tol) {
  Index count = 0;
  for (Index i = 0; i < x.size(); ++i) {
    if (std::abs(x[i]) > tol) ++count;
  }
  return count;
}

std::vector<Index> sorting_permutation(const Vector& v) {
  std::vector<Index> perm(static_cast<std::size_t>(v.size()));
  std::iota(perm.begin(), perm.end(), Index{0});
  std::stable_sort(perm.begin(), perm.end(), [&](Index a, Index b) { return v[a] > v[b]; });
  return perm;
}

Support complement(const Support& support, Index n) {
  Support out;
  out.reserve(static_cast<std::size_t>(n) - support.size());
  auto it = support.begin();
  for (Index i = 0; i < n; ++i) {
    if (it != support.end() && *it == i) {
      ++it;
    } else {
      out.push_back(i);
    }
  }
  return out;
}

Vector gather(const Vector& x, std::span<const Index> indices) {
  Vector out(static_cast<Index>(indices.size()));
  for (std::size_t k = 0; k < indices.size(); ++k) out[static_cast<Index>(k)] = x[indices[k]];
  return out;
}

Vector scatter(const Vector& values, std::span<const Index> indices, Index n) {
  Vector out = Vector::Zero(n);
  for (std::size_t k = 0; k < indices.size(); ++k) out[indices[k]] = values[static_cast<Index>(k)];
  return out;
}

bool all_finite(const Vector& x) { return x.allFinite(); }

std::uint64_t binomial_capped(std::uint64_t n, std::uint64_t k, std::uint64_t cap) {
  if (k > n) return 0;
  k = std::min(k, n - k);
  // result stays an exact integer at every step: C(n-k+i, i)
  long double result = 1;
  for (std::uint64_t i = 1; i <= k; ++i) {
    result = result * static_cast<long double>(n - k + i) / static_cast<long double>(i);
    if (result > static_cast<long double>(cap)) return cap;
  }
  return static_cast<std::uint64_t>(std::llround(result));
}

double Rng::uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

double Rng::normal() {
  if (has_spare_) {
    has_spare_ = false;
    return spare_;
  }
  double u, v, r2;
  do {
    u = 2.0 * uniform() - 1.0;
    v = 2.0 * uniform() - 1.0;
    r2 = u * u + v * v;
  } while (r2 >= 1.0 || r2 == 0.0);
  const double scale = std::sqrt(-2.0 * std::log(r2) / r2);
  spare_ = v * scale;
  has_spare_ = true;
  return u * scale;
}

std::uint64_t Rng::below(std::uint64_t bound) {
  if (bound == 0) throw Error("Rng::below: bound must be positive");
  // reject the top partial block so every residue is equally likely
  const std::uint64_t limit = UINT64_MAX - (UINT64_MAX % bound + 1) % bound;
  std::uint64_t r;
  do {
    r = engine_();
  } while (r > limit);
  return r % bound;
}

Vector Rng::normal_vector(Index n) {
  Vector out(n);
  for (Index i = 0; i < n; ++i) out[i] = normal();
  return out;
}

Matrix Rng::normal_matrix(Index rows, Index cols) {
  Matrix out(rows, cols);
  for (Index i = 0; i < rows; ++i)
    for (Index j = 0; j < cols; ++j) out(i, j) = normal();
  return out;
}

std::vector<Index> Rng::permutation(Index n) {
  std::vector<Index> perm(static_cast<std::size_t>(n));
  std::iota(perm.begin(), perm.end(), Index{0});
  for (Index i = n - 1; i > 0; --i) {
    const auto j = static_cast<Index>(below(static_cast<std::uint64_t>(i) + 1));
    std::swap(perm[static_cast<std::size_t>(i)], perm[static_cast<std::size_t>(j)]);
  }
  return perm;
}

Support Rng::sample_subset(Index n, Index k) {
  if (k < 0 || k > n) throw Error("Rng::sample_subset: k out of range");
  std::vector<Index> pool(static_cast<std::size_t>(n));
  std::iota(pool.begin(), pool.end(), Index{0});
  // partial Fisher-Yates: the first k slots end up uniformly sampled
  for (Index i = 0; i < k; ++i) {
    const auto j = i + static_cast<Index>(below(static_cast<std::uint64_t>(n - i)));
    std::swap(pool[static_cast<std::size_t>(i)], pool[static_cast<std::size_t>(j)]);
  }
  Support out(pool.begin(), pool.begin() + k);
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace npg
