#pragma once

#include <cstdint>
#include <random>

#include "freecert/linalg.hpp"

namespace freecert {

/// Seeded random source used by all sampling helpers.  One engine per run;
/// passing the same seed reproduces every draw on a given build.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  double normal() { return normal_(engine_); }
  double uniform(double lo, double hi) {
    return std::uniform_real_distribution<double>(lo, hi)(engine_);
  }
  int uniform_int(int lo, int hi) {
    return std::uniform_int_distribution<int>(lo, hi)(engine_);
  }
  Complex cnormal() { return Complex(normal(), normal()); }

  /// Complex Ginibre matrix, entries ~ N(0,1) + i N(0,1).
  Mat gaussian(int rows, int cols);

  /// Hermitian Gaussian matrix (GUE-type normalization is not needed here;
  /// entries are O(1)).
  Mat gaussian_hermitian(int n);

  /// Haar-ish unitary via QR of a Ginibre matrix with phase fixing.
  Mat random_unitary(int n);

  /// Invertible matrix with singular values in [1/cond_bound^{1/2}, cond_bound^{1/2}].
  Mat well_conditioned(int n, double cond_bound = 4.0);

  std::mt19937_64& engine() { return engine_; }

 private:
  std::mt19937_64 engine_;
  std::normal_distribution<double> normal_{0.0, 1.0};
};

}  // namespace freecert
