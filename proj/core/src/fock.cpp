#include "freecert/fock.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include "freecert/linalg.hpp"

namespace freecert {

TruncatedFock::TruncatedFock(int letters, int max_len, long dim_cap)
    : letters_(letters), max_len_(max_len) {
  if (letters < 1) throw std::invalid_argument("TruncatedFock: letters < 1");
  if (max_len < 0) throw std::invalid_argument("TruncatedFock: max_len < 0");
  long dim = dimension(letters, max_len);
  if (dim < 0 || dim > dim_cap)
    throw std::invalid_argument("TruncatedFock: basis of size " +
                                std::to_string(dim) + " exceeds cap " +
                                std::to_string(dim_cap));
  basis_.reserve(dim);
  layer_offset_.assign(max_len + 2, 0);
  // Graded-lex enumeration: layer k is layer k-1 with every letter appended.
  basis_.push_back(Word::empty());
  long layer_begin = 0;
  for (int len = 1; len <= max_len; ++len) {
    layer_offset_[len] = static_cast<long>(basis_.size());
    long layer_end = static_cast<long>(basis_.size());
    for (long i = layer_begin; i < layer_end; ++i) {
      Word base = basis_[i];
      for (int j = 1; j <= letters; ++j)
        basis_.push_back(base.concat(Word::letter(j)));
    }
    layer_begin = layer_end;
  }
  layer_offset_[max_len + 1] = static_cast<long>(basis_.size());
}

long TruncatedFock::dimension(int letters, int max_len) {
  long dim = 0, pow = 1;
  for (int j = 0; j <= max_len; ++j) {
    dim += pow;
    if (dim < 0) return -1;  // overflow sentinel
    pow *= letters;
    if (pow < 0) return -1;
  }
  return dim;
}

int TruncatedFock::index_of(const Word& w) const {
  const int k = static_cast<int>(w.size());
  if (k > max_len_)
    throw std::invalid_argument("TruncatedFock: word longer than max_len");
  long pos = 0;
  for (int t = 0; t < k; ++t) {
    if (w.starred(t))
      throw std::invalid_argument("TruncatedFock: starred letter in basis word");
    int j = w.index(t);
    if (j > letters_)
      throw std::invalid_argument("TruncatedFock: letter index out of range");
    pos = pos * letters_ + (j - 1);
  }
  return static_cast<int>((k == 0 ? 0 : layer_offset_[k]) + pos);
}

MatrixTuple TruncatedFock::creation_ops() const {
  const int d = dim();
  std::vector<Mat> ops(letters_, Mat::Zero(d, d));
  for (int i = 0; i < d; ++i) {
    const Word& w = basis_[i];
    if (static_cast<int>(w.size()) >= max_len_) continue;
    for (int j = 1; j <= letters_; ++j)
      ops[j - 1](index_of(Word::letter(j).concat(w)), i) = 1.0;
  }
  return MatrixTuple(std::move(ops));
}

Mat TruncatedFock::right_mult(const Word& u) const {
  if (static_cast<int>(u.size()) > max_len_)
    throw std::invalid_argument("TruncatedFock::right_mult: |u| > max_len");
  if (u.has_starred_letters())
    throw std::invalid_argument("TruncatedFock::right_mult: starred letter");
  const int d = dim();
  Mat r = Mat::Zero(d, d);
  for (int i = 0; i < d; ++i) {
    const Word& v = basis_[i];
    if (static_cast<int>(v.size() + u.size()) > max_len_) continue;
    r(index_of(v.concat(u)), i) = 1.0;
  }
  return r;
}

DilationResult dilate(const MatrixTuple& x, double r, int max_len,
                      long dim_cap) {
  const int n = x.dim();
  const int g = x.arity();
  if (g < 1) throw std::invalid_argument("dilate: empty tuple");
  if (r <= 0.0) throw std::invalid_argument("dilate: radius must be positive");

  // Joint nilpotency at order max_len: every product of max_len+1 entries
  // must vanish (relative to the entry norms).
  const double norm_bound = std::max(1.0, x.norm());
  const double nil_tol = 1e-10 * std::pow(norm_bound, max_len + 1);
  {
    std::vector<Mat> layer{Mat::Identity(n, n)};
    for (int len = 1; len <= max_len + 1; ++len) {
      std::vector<Mat> next;
      next.reserve(layer.size() * g);
      for (const Mat& p : layer)
        for (int j = 0; j < g; ++j) {
          Mat q = p * x[j];
          // Exactly-zero products stay zero under extension; drop them.
          if (q.cwiseAbs().maxCoeff() > 0.0) next.push_back(std::move(q));
        }
      layer = std::move(next);
      if (len == max_len + 1) {
        for (const Mat& p : layer)
          if (p.cwiseAbs().maxCoeff() > nil_tol)
            throw std::invalid_argument(
                "dilate: tuple is not jointly nilpotent at order max_len");
      }
    }
  }

  double rn2 = x.row_norm_sq();
  if (rn2 >= r * r)
    throw std::invalid_argument(
        "dilate: sum X_j X_j* has top eigenvalue " + std::to_string(rn2) +
        ", not strictly below r^2 = " + std::to_string(r * r));

  TruncatedFock fock(g, max_len, dim_cap);
  const int sdim = fock.dim();
  MatrixTuple y = x.scaled(Complex(1.0 / r, 0.0));

  Mat gram = Mat::Identity(n, n);
  for (int j = 0; j < g; ++j) gram -= y[j] * y[j].adjoint();
  Mat defect = psd_sqrt(gram);
  Mat d2 = defect * defect;

  // V gamma = sum_w (D (Y^w)* gamma) (x) e_w, rows ordered (C^n)-major.
  Mat v = Mat::Zero(static_cast<long>(n) * sdim, n);
  Mat completeness = Mat::Zero(n, n);
  for (int i = 0; i < sdim; ++i) {
    Mat yw = eval_word(fock.word_at(i), y);
    Mat block = defect * yw.adjoint();
    for (int a = 0; a < n; ++a)
      v.row(static_cast<long>(a) * sdim + i) = block.row(a);
    completeness += yw * d2 * yw.adjoint();
  }

  DilationResult out;
  out.isometry = v;
  out.defect = defect;
  out.scale = r;
  out.isometry_residual = (v.adjoint() * v - Mat::Identity(n, n)).norm();
  out.completeness_residual = (completeness - Mat::Identity(n, n)).norm();
  MatrixTuple t = fock.creation_ops();
  double worst = 0.0;
  for (int j = 0; j < g; ++j) {
    Mat lhs = v * x[j].adjoint();
    Mat rhs = r * kron(Mat::Identity(n, n), t[j].adjoint()) * v;
    worst = std::max(worst, (lhs - rhs).norm());
  }
  out.intertwine_residual = worst;
  return out;
}

}  // namespace freecert
