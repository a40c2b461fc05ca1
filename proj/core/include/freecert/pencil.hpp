#pragma once

#include <vector>

#include "freecert/poly.hpp"
#include "freecert/tuple.hpp"

namespace freecert {

/// The three pencil flavors kept by LinearPencil.
///   homogeneous:  L(X) = sum_j A_j (x) X_j            (not self-adjoint)
///   hermitian:    L(X) = I + sum_j A_j (x) X_j + A_j* (x) X_j*
///   monic:        L(X) = I - sum_j A_j (x) X_j,  A_j Hermitian
enum class PencilForm { homogeneous, hermitian, monic };

const char* pencil_form_name(PencilForm f);

class LinearPencil {
 public:
  LinearPencil() = default;
  LinearPencil(PencilForm form, std::vector<Mat> coeffs);

  static LinearPencil homogeneous(std::vector<Mat> coeffs);
  static LinearPencil hermitian_form(std::vector<Mat> coeffs);
  /// Coefficients must be Hermitian up to `herm_tol`; they are symmetrized.
  static LinearPencil monic(std::vector<Mat> coeffs, double herm_tol = 1e-12);

  PencilForm form() const { return form_; }
  int num_vars() const { return static_cast<int>(coeffs_.size()); }
  int dim() const { return coeffs_.empty() ? 0 : static_cast<int>(coeffs_[0].rows()); }
  const Mat& coeff(int j) const { return coeffs_.at(j); }
  const std::vector<Mat>& coeffs() const { return coeffs_; }

  /// The pencil as a matrix-coefficient polynomial (identity term included
  /// for the hermitian and monic forms).
  FreePoly to_poly() const;

 private:
  PencilForm form_ = PencilForm::homogeneous;
  std::vector<Mat> coeffs_;
};

struct PencilValue {
  Mat value;          ///< symmetrized for hermitian/monic forms
  double asymmetry;   ///< Frobenius distance of the raw value to its Hermitian part
};

/// Levelwise pencil evaluation on a tuple.  For the monic form on
/// non-Hermitian tuples the raw value need not be self-adjoint; the value is
/// symmetrized and the discarded residual recorded.
PencilValue eval_pencil(const LinearPencil& pencil, const MatrixTuple& x);

}  // namespace freecert
