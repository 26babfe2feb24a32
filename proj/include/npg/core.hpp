#pragma once

#include <cstddef>
#include <cstdint>
#include <random>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include <Eigen/Dense>

namespace npg {

using Vector = Eigen::VectorXd;
using Matrix = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;
using Index = Eigen::Index;

/// Strictly increasing list of 0-based coordinate indices.
using Support = std::vector<Index>;

// Error hierarchy. Everything thrown by the library derives from npg::Error.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Raised when an operation needs 0 < ||x||_0 < n and gets a zero or full vector.
class DegenerateInput : public Error {
 public:
  using Error::Error;
};

class DimensionMismatch : public Error {
 public:
  using Error::Error;
};

class InfeasiblePoint : public Error {
 public:
  using Error::Error;
};

class InvalidConfig : public Error {
 public:
  using Error::Error;
};

/// Combinatorial enumeration guard exceeded.
class GuardViolation : public Error {
 public:
  using Error::Error;
};

/// Indices i with |x_i| > tol.
Support support_of(const Vector& x, double tol = 0.0);

/// Number of entries with |x_i| > tol.
Index count_nonzero(const Vector& x, double tol = 0.0);

/// Permutation sorting v in non-ascending order. Ties keep ascending index order.
std::vector<Index> sorting_permutation(const Vector& v);

/// Complement of a support inside {0, ..., n-1}.
Support complement(const Support& support, Index n);

/// x restricted to the given indices.
Vector gather(const Vector& x, std::span<const Index> indices);

/// Writes values into a zero vector of length n at the given indices.
Vector scatter(const Vector& values, std::span<const Index> indices, Index n);

bool all_finite(const Vector& x);

/// Binomial coefficient, saturating at `cap` to avoid overflow.
std::uint64_t binomial_capped(std::uint64_t n, std::uint64_t k, std::uint64_t cap);

/// Seeded random stream.
///
/// Bits come from std::mt19937_64, whose output sequence is fixed by the C++
/// standard. The distributions are implemented here rather than taken from
/// <random>, because the standard library distributions are not specified
/// bit-for-bit and differ between implementations:
///   uniform   - top 53 bits scaled to [0, 1)
///   normal    - Marsaglia polar method
///   integers  - rejection sampling on the raw 64-bit words
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : seed_(seed), engine_(seed) {}

  std::uint64_t seed() const { return seed_; }
  std::uint64_t next_u64() { return engine_(); }

  double uniform();
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }
  double normal();
  /// Uniform integer in [0, bound).
  std::uint64_t below(std::uint64_t bound);

  Vector normal_vector(Index n);
  Matrix normal_matrix(Index rows, Index cols);

  /// Uniformly random k-subset of {0, ..., n-1}, returned sorted.
  Support sample_subset(Index n, Index k);
  /// Uniformly random permutation of {0, ..., n-1}.
  std::vector<Index> permutation(Index n);

  static constexpr const char* kAlgorithm = "mt19937_64+polar";

 private:
  std::uint64_t seed_;
  std::mt19937_64 engine_;
  bool has_spare_ = false;
  double spare_ = 0.0;
};

}  // namespace npg
