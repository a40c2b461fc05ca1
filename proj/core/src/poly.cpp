#include "freecert/poly.hpp"

#include <sstream>
#include <stdexcept>

namespace freecert {

namespace {
bool exactly_zero(const Mat& m) {
  for (Eigen::Index i = 0; i < m.rows(); ++i)
    for (Eigen::Index j = 0; j < m.cols(); ++j)
      if (m(i, j) != Complex(0.0, 0.0)) return false;
  return true;
}
}  // namespace

FreePoly::FreePoly(int num_vars, int rows, int cols)
    : num_vars_(num_vars), rows_(rows), cols_(cols) {
  if (num_vars < 0 || rows < 1 || cols < 1)
    throw std::invalid_argument("FreePoly: bad shape");
}

FreePoly FreePoly::zero(int num_vars, int rows, int cols) {
  return FreePoly(num_vars, rows, cols);
}

FreePoly FreePoly::constant(int num_vars, const Mat& value) {
  FreePoly p(num_vars, static_cast<int>(value.rows()),
             static_cast<int>(value.cols()));
  p.set_coeff(Word::empty(), value);
  return p;
}

FreePoly FreePoly::constant(int num_vars, Complex value) {
  return constant(num_vars, Mat::Constant(1, 1, value));
}

FreePoly FreePoly::variable(int j, int num_vars, bool star) {
  if (j < 1 || j > num_vars)
    throw std::invalid_argument("FreePoly::variable: index out of range");
  FreePoly p(num_vars, 1, 1);
  p.set_coeff(Word::letter(j, star), Mat::Constant(1, 1, Complex(1.0, 0.0)));
  return p;
}

int FreePoly::degree() const {
  int d = 0;
  for (const auto& [w, c] : terms_) d = std::max<int>(d, static_cast<int>(w.size()));
  return d;
}

bool FreePoly::has_starred_letters() const {
  for (const auto& [w, c] : terms_)
    if (w.has_starred_letters()) return true;
  return false;
}

Mat FreePoly::coeff(const Word& w) const {
  auto it = terms_.find(w);
  if (it == terms_.end()) return Mat::Zero(rows_, cols_);
  return it->second;
}

void FreePoly::set_coeff(const Word& w, const Mat& c) {
  if (c.rows() != rows_ || c.cols() != cols_)
    throw std::invalid_argument("FreePoly::set_coeff: coefficient shape mismatch");
  if (w.max_index() > num_vars_)
    throw std::invalid_argument("FreePoly::set_coeff: word letter beyond num_vars");
  if (exactly_zero(c))
    terms_.erase(w);
  else
    terms_[w] = c;
}

void FreePoly::add_term(const Word& w, const Mat& c) {
  set_coeff(w, coeff(w) + c);
}

FreePoly FreePoly::operator+(const FreePoly& o) const {
  if (num_vars_ != o.num_vars_ || rows_ != o.rows_ || cols_ != o.cols_)
    throw std::invalid_argument("FreePoly: shape mismatch in +");
  FreePoly out = *this;
  for (const auto& [w, c] : o.terms_) out.add_term(w, c);
  return out;
}

FreePoly FreePoly::operator-(const FreePoly& o) const {
  return *this + o.scaled(Complex(-1.0, 0.0));
}

FreePoly FreePoly::operator*(const FreePoly& o) const {
  if (num_vars_ != o.num_vars_)
    throw std::invalid_argument("FreePoly: num_vars mismatch in *");
  if (cols_ != o.rows_)
    throw std::invalid_argument("FreePoly: coefficient shapes do not conform in *");
  FreePoly out(num_vars_, rows_, o.cols_);
  for (const auto& [u, a] : terms_)
    for (const auto& [v, b] : o.terms_) out.add_term(u.concat(v), a * b);
  return out;
}

FreePoly FreePoly::scaled(Complex c) const {
  FreePoly out(num_vars_, rows_, cols_);
  for (const auto& [w, m] : terms_) out.set_coeff(w, c * m);
  return out;
}

FreePoly FreePoly::adjoint() const {
  FreePoly out(num_vars_, cols_, rows_);
  for (const auto& [w, m] : terms_) out.set_coeff(w.adjoint(), m.adjoint());
  return out;
}

FreePoly FreePoly::symmetric_adjoint() const {
  if (has_starred_letters())
    throw std::invalid_argument(
        "symmetric_adjoint: polynomial has starred letters; the symmetric "
        "involution is defined on plain words only");
  FreePoly out(num_vars_, cols_, rows_);
  for (const auto& [w, m] : terms_) out.set_coeff(w.reversed(), m.adjoint());
  return out;
}

bool FreePoly::operator==(const FreePoly& o) const {
  if (num_vars_ != o.num_vars_ || rows_ != o.rows_ || cols_ != o.cols_)
    return false;
  if (terms_.size() != o.terms_.size()) return false;
  auto it = terms_.begin();
  auto jt = o.terms_.begin();
  for (; it != terms_.end(); ++it, ++jt) {
    if (it->first != jt->first) return false;
    if (it->second != jt->second) return false;
  }
  return true;
}

std::string FreePoly::str() const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [w, c] : terms_) {
    if (!first) os << " + ";
    first = false;
    if (is_scalar()) {
      Complex v = c(0, 0);
      if (v.imag() == 0.0)
        os << v.real();
      else
        os << "(" << v.real() << (v.imag() < 0 ? "-" : "+")
           << std::abs(v.imag()) << "i)";
    } else {
      os << "[" << rows_ << "x" << cols_ << "]";
    }
    if (!w.is_empty()) os << "*" << w.str();
  }
  return os.str();
}

Mat eval_poly(const FreePoly& p, const MatrixTuple& x) {
  const int n = x.dim();
  Mat acc = Mat::Zero(p.rows() * n, p.cols() * n);
  for (const auto& [w, c] : p.terms()) acc += kron(c, eval_word(w, x));
  return acc;
}

MatrixTuple eval_poly_tuple(const std::vector<FreePoly>& components,
                            const MatrixTuple& x) {
  std::vector<Mat> out;
  out.reserve(components.size());
  for (const FreePoly& p : components) {
    if (!p.is_scalar())
      throw std::invalid_argument("eval_poly_tuple: components must be scalar");
    out.push_back(eval_poly(p, x));
  }
  return MatrixTuple(std::move(out));
}

}  // namespace freecert
