#pragma once

#include <vector>

#include "freecert/linalg.hpp"
#include "freecert/word.hpp"

namespace freecert {

/// A g-tuple of square matrices of one common size n — a single "level" of a
/// matrix universe.  All evaluation maps act levelwise on these.
class MatrixTuple {
 public:
  MatrixTuple() = default;
  explicit MatrixTuple(std::vector<Mat> mats);
  static MatrixTuple zero(int arity, int dim);
  static MatrixTuple scalars(const std::vector<Complex>& values);

  int arity() const { return static_cast<int>(mats_.size()); }
  int dim() const { return mats_.empty() ? 0 : static_cast<int>(mats_[0].rows()); }

  const Mat& operator[](int j) const { return mats_.at(j); }
  Mat& operator[](int j) { return mats_.at(j); }
  const std::vector<Mat>& mats() const { return mats_; }

  /// max_j of the operator norm of the entries.
  double norm() const;
  /// Largest eigenvalue of sum_j X_j X_j*, i.e. the squared row norm.
  double row_norm_sq() const;

  MatrixTuple adjoint() const;
  MatrixTuple scaled(Complex factor) const;

  MatrixTuple operator+(const MatrixTuple& o) const;
  MatrixTuple operator-(const MatrixTuple& o) const;

 private:
  std::vector<Mat> mats_;
};

/// X^w: the product of the tuple entries along the word, adjoints for starred
/// letters.  The empty word evaluates to the identity.
Mat eval_word(const Word& w, const MatrixTuple& x);

/// Blockwise direct sum, (X (+) Y)_j = diag(X_j, Y_j).  Arities must agree.
MatrixTuple direct_sum(const MatrixTuple& x, const MatrixTuple& y);

/// U* X U entrywise; U must pass a unitarity test at tolerance
/// unitarity_tol * (1 + n).
MatrixTuple unitary_conj(const MatrixTuple& x, const Mat& u,
                         double unitarity_tol = 1e-10);

}  // namespace freecert
