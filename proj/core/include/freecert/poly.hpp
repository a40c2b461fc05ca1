#pragma once

#include <map>

#include "freecert/tuple.hpp"
#include "freecert/word.hpp"

namespace freecert {

/// A noncommutative polynomial sum_w C_w w with matrix coefficients of one
/// common shape.  Terms are kept in graded lexicographic order; coefficients
/// that are exactly zero are dropped, so the representation is canonical and
/// equality is termwise.
class FreePoly {
 public:
  using TermMap = std::map<Word, Mat, GradedLexLess>;

  FreePoly() = default;
  FreePoly(int num_vars, int rows, int cols);

  static FreePoly zero(int num_vars, int rows = 1, int cols = 1);
  static FreePoly constant(int num_vars, const Mat& value);
  static FreePoly constant(int num_vars, Complex value);
  /// The scalar monomial x_j (or x_j* when star is set).
  static FreePoly variable(int j, int num_vars, bool star = false);

  int num_vars() const { return num_vars_; }
  int rows() const { return rows_; }
  int cols() const { return cols_; }
  bool is_scalar() const { return rows_ == 1 && cols_ == 1; }
  bool is_zero() const { return terms_.empty(); }

  /// Highest word length present (0 for the zero polynomial).
  int degree() const;
  bool has_starred_letters() const;

  const TermMap& terms() const { return terms_; }
  /// Coefficient of w, a zero matrix of the right shape when absent.
  Mat coeff(const Word& w) const;
  void set_coeff(const Word& w, const Mat& c);
  void add_term(const Word& w, const Mat& c);

  FreePoly operator+(const FreePoly& o) const;
  FreePoly operator-(const FreePoly& o) const;
  /// Free product: (A u)(B v) = (AB)(uv); coefficient shapes must conform.
  FreePoly operator*(const FreePoly& o) const;
  FreePoly scaled(Complex c) const;

  /// The *-involution: words reversed and starred, coefficients adjointed.
  FreePoly adjoint() const;
  /// Involution of the symmetric-variable setting: words reversed without
  /// starring, coefficients adjointed.  Rejects polynomials with starred
  /// letters.
  FreePoly symmetric_adjoint() const;

  bool operator==(const FreePoly& o) const;

  std::string str() const;

 private:
  int num_vars_ = 0;
  int rows_ = 1;
  int cols_ = 1;
  TermMap terms_;
};

/// sum_w C_w (x) w(X), a (rows*n) x (cols*n) matrix with coefficient-major
/// Kronecker blocks.
Mat eval_poly(const FreePoly& p, const MatrixTuple& x);

/// Per-component evaluation of a vector of scalar polynomials.
MatrixTuple eval_poly_tuple(const std::vector<FreePoly>& components,
                            const MatrixTuple& x);

}  // namespace freecert
