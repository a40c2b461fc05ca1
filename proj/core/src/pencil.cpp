#include "freecert/pencil.hpp"

#include <stdexcept>

namespace freecert {

const char* pencil_form_name(PencilForm f) {
  switch (f) {
    case PencilForm::homogeneous: return "homogeneous";
    case PencilForm::hermitian: return "hermitian";
    case PencilForm::monic: return "monic";
  }
  return "?";
}

LinearPencil::LinearPencil(PencilForm form, std::vector<Mat> coeffs)
    : form_(form), coeffs_(std::move(coeffs)) {
  if (coeffs_.empty())
    throw std::invalid_argument("LinearPencil: needs at least one coefficient");
  const auto d = coeffs_[0].rows();
  for (const Mat& a : coeffs_)
    if (a.rows() != d || a.cols() != d)
      throw std::invalid_argument("LinearPencil: coefficients must be square "
                                  "and of one common size");
}

LinearPencil LinearPencil::homogeneous(std::vector<Mat> coeffs) {
  return LinearPencil(PencilForm::homogeneous, std::move(coeffs));
}

LinearPencil LinearPencil::hermitian_form(std::vector<Mat> coeffs) {
  return LinearPencil(PencilForm::hermitian, std::move(coeffs));
}

LinearPencil LinearPencil::monic(std::vector<Mat> coeffs, double herm_tol) {
  for (Mat& a : coeffs) {
    if ((a - a.adjoint()).cwiseAbs().maxCoeff() > herm_tol * (1.0 + a.norm()))
      throw std::invalid_argument(
          "LinearPencil::monic: coefficients must be Hermitian");
    a = herm_part(a);
  }
  return LinearPencil(PencilForm::monic, std::move(coeffs));
}

FreePoly LinearPencil::to_poly() const {
  const int d = dim();
  const int g = num_vars();
  FreePoly p(g, d, d);
  if (form_ != PencilForm::homogeneous)
    p.set_coeff(Word::empty(), Mat::Identity(d, d));
  for (int j = 0; j < g; ++j) {
    switch (form_) {
      case PencilForm::homogeneous:
        p.add_term(Word::letter(j + 1), coeffs_[j]);
        break;
      case PencilForm::hermitian:
        p.add_term(Word::letter(j + 1), coeffs_[j]);
        p.add_term(Word::letter(j + 1, true), coeffs_[j].adjoint());
        break;
      case PencilForm::monic:
        p.add_term(Word::letter(j + 1), -coeffs_[j]);
        break;
    }
  }
  return p;
}

PencilValue eval_pencil(const LinearPencil& pencil, const MatrixTuple& x) {
  if (x.arity() != pencil.num_vars())
    throw std::invalid_argument("eval_pencil: arity mismatch");
  const int d = pencil.dim();
  const int n = x.dim();
  Mat acc = Mat::Zero(d * n, d * n);
  if (pencil.form() != PencilForm::homogeneous)
    acc = Mat::Identity(d * n, d * n);
  for (int j = 0; j < pencil.num_vars(); ++j) {
    const Mat& a = pencil.coeff(j);
    switch (pencil.form()) {
      case PencilForm::homogeneous:
        acc += kron(a, x[j]);
        break;
      case PencilForm::hermitian:
        acc += kron(a, x[j]) + kron(a.adjoint(), x[j].adjoint());
        break;
      case PencilForm::monic:
        acc -= kron(a, x[j]);
        break;
    }
  }
  if (pencil.form() == PencilForm::homogeneous)
    return PencilValue{acc, 0.0};
  double asym = asymmetry(acc);
  return PencilValue{herm_part(acc), asym};
}

}  // namespace freecert
