#include "freecert/tuple.hpp"

#include <stdexcept>

namespace freecert {

MatrixTuple::MatrixTuple(std::vector<Mat> mats) : mats_(std::move(mats)) {
  for (const Mat& m : mats_) {
    if (m.rows() != m.cols())
      throw std::invalid_argument("MatrixTuple: entries must be square");
    if (!mats_.empty() && m.rows() != mats_[0].rows())
      throw std::invalid_argument("MatrixTuple: entries must share one size");
  }
}

MatrixTuple MatrixTuple::zero(int arity, int dim) {
  return MatrixTuple(std::vector<Mat>(arity, Mat::Zero(dim, dim)));
}

MatrixTuple MatrixTuple::scalars(const std::vector<Complex>& values) {
  std::vector<Mat> m;
  m.reserve(values.size());
  for (Complex v : values) m.push_back(Mat::Constant(1, 1, v));
  return MatrixTuple(std::move(m));
}

double MatrixTuple::norm() const {
  double r = 0.0;
  for (const Mat& m : mats_) r = std::max(r, operator_norm(m));
  return r;
}

double MatrixTuple::row_norm_sq() const {
  if (mats_.empty()) return 0.0;
  Mat s = Mat::Zero(dim(), dim());
  for (const Mat& m : mats_) s += m * m.adjoint();
  return lambda_max(s);
}

MatrixTuple MatrixTuple::adjoint() const {
  std::vector<Mat> out;
  out.reserve(mats_.size());
  for (const Mat& m : mats_) out.push_back(m.adjoint());
  return MatrixTuple(std::move(out));
}

MatrixTuple MatrixTuple::scaled(Complex factor) const {
  std::vector<Mat> out;
  out.reserve(mats_.size());
  for (const Mat& m : mats_) out.push_back(factor * m);
  return MatrixTuple(std::move(out));
}

MatrixTuple MatrixTuple::operator+(const MatrixTuple& o) const {
  if (arity() != o.arity() || dim() != o.dim())
    throw std::invalid_argument("MatrixTuple: shape mismatch in +");
  std::vector<Mat> out;
  out.reserve(mats_.size());
  for (std::size_t j = 0; j < mats_.size(); ++j)
    out.push_back(mats_[j] + o.mats_[j]);
  return MatrixTuple(std::move(out));
}

MatrixTuple MatrixTuple::operator-(const MatrixTuple& o) const {
  return *this + o.scaled(Complex(-1.0, 0.0));
}

Mat eval_word(const Word& w, const MatrixTuple& x) {
  const int n = x.dim();
  Mat acc = Mat::Identity(n, n);
  for (std::size_t k = 0; k < w.size(); ++k) {
    int j = w.index(k);
    if (j > x.arity())
      throw std::invalid_argument("eval_word: word uses letter x" +
                                  std::to_string(j) + " beyond tuple arity " +
                                  std::to_string(x.arity()));
    const Mat& m = x[j - 1];
    acc = w.starred(k) ? Mat(acc * m.adjoint()) : Mat(acc * m);
  }
  return acc;
}

MatrixTuple direct_sum(const MatrixTuple& x, const MatrixTuple& y) {
  if (x.arity() != y.arity())
    throw std::invalid_argument("direct_sum: arities differ");
  const int n = x.dim(), m = y.dim();
  std::vector<Mat> out;
  out.reserve(x.arity());
  for (int j = 0; j < x.arity(); ++j) {
    Mat b = Mat::Zero(n + m, n + m);
    b.topLeftCorner(n, n) = x[j];
    b.bottomRightCorner(m, m) = y[j];
    out.push_back(std::move(b));
  }
  return MatrixTuple(std::move(out));
}

MatrixTuple unitary_conj(const MatrixTuple& x, const Mat& u,
                         double unitarity_tol) {
  const int n = x.dim();
  if (u.rows() != n || u.cols() != n)
    throw std::invalid_argument("unitary_conj: size mismatch");
  double defect = (u.adjoint() * u - Mat::Identity(n, n)).cwiseAbs().maxCoeff();
  if (defect > unitarity_tol * (1.0 + n))
    throw std::invalid_argument("unitary_conj: matrix fails unitarity test, "
                                "||U*U - I||_max = " + std::to_string(defect));
  std::vector<Mat> out;
  out.reserve(x.arity());
  for (int j = 0; j < x.arity(); ++j) out.push_back(u.adjoint() * x[j] * u);
  return MatrixTuple(std::move(out));
}

}  // namespace freecert
