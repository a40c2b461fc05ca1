#include "freecert/series.hpp"

#include <cmath>
#include <stdexcept>

#include "freecert/fock.hpp"

namespace freecert {

Vec PowerSeries::coeff(const Word& w) const {
  auto it = coeffs.find(w);
  if (it == coeffs.end()) return Vec::Zero(out_vars);
  return it->second;
}

void PowerSeries::set_coeff(const Word& w, const Vec& v) {
  if (v.size() != out_vars)
    throw std::invalid_argument("PowerSeries: coefficient length mismatch");
  if (w.has_starred_letters() || static_cast<int>(w.size()) > max_len)
    throw std::invalid_argument("PowerSeries: word outside the stored range");
  if (v.isZero(0.0))
    coeffs.erase(w);
  else
    coeffs[w] = v;
}

void PowerSeries::attach_bound(double c, double eps) {
  if (c <= 0.0 || eps <= 0.0)
    throw std::invalid_argument("PowerSeries: bound data must be positive");
  for (const auto& [w, v] : coeffs) {
    double cap = c / std::pow(eps, static_cast<double>(w.size()));
    if (v.norm() > cap * (1.0 + 1e-9))
      throw std::invalid_argument(
          "PowerSeries: coefficient of " + w.str() +
          " violates the growth bound C/eps^{|w|}");
  }
  bound = GrowthBound{c, eps};
}

std::vector<FreePoly> PowerSeries::to_polys() const {
  std::vector<FreePoly> out(out_vars, FreePoly::zero(in_vars));
  for (const auto& [w, v] : coeffs)
    for (int i = 0; i < out_vars; ++i)
      if (v(i) != Complex(0.0, 0.0))
        out[i].add_term(w, Mat::Constant(1, 1, v(i)));
  return out;
}

PowerSeries PowerSeries::from_polys(const std::vector<FreePoly>& components,
                                    int max_len) {
  if (components.empty())
    throw std::invalid_argument("PowerSeries: no components");
  PowerSeries s;
  s.in_vars = components[0].num_vars();
  s.out_vars = static_cast<int>(components.size());
  s.max_len = max_len;
  for (int i = 0; i < s.out_vars; ++i) {
    const FreePoly& p = components[i];
    if (!p.is_scalar() || p.num_vars() != s.in_vars)
      throw std::invalid_argument("PowerSeries: bad component");
    if (p.degree() > max_len)
      throw std::invalid_argument("PowerSeries: component degree exceeds max_len");
    for (const auto& [w, c] : p.terms()) {
      Vec v = s.coeff(w);
      v(i) = c(0, 0);
      s.set_coeff(w, v);
    }
  }
  return s;
}

PowerSeries extract_coeffs(const FreeMapHandle& f, int max_len, double delta,
                           std::vector<std::string>* warnings, long dim_cap) {
  if (delta <= 0.0)
    throw std::invalid_argument("extract_coeffs: delta must be positive");
  if (max_len < 0) throw std::invalid_argument("extract_coeffs: max_len < 0");
  auto warn = [&](const std::string& msg) {
    if (warnings) warnings->push_back(msg);
  };
  if (max_len > 20)
    warn("max_len > 20: coefficient rescaling by delta^{-|w|} will drown in "
         "rounding error");

  if (f.domain) {
    if (const auto* nb = std::get_if<EpsNeighborhood>(&*f.domain)) {
      if (delta >= nb->radius)
        throw std::invalid_argument(
            "extract_coeffs: delta must be below the domain radius " +
            std::to_string(nb->radius));
    }
  }

  TruncatedFock fock(f.in_vars, max_len, dim_cap);
  MatrixTuple t = fock.creation_ops();
  MatrixTuple scaled = t.scaled(Complex(delta, 0.0));

  if (f.domain && !std::holds_alternative<EpsNeighborhood>(*f.domain)) {
    if (fock.dim() <= 2048) {
      if (!contains(*f.domain, scaled).is_member())
        warn("scaled creation tuple lies outside the declared domain; "
             "proceeding, since evaluation on nilpotents is a finite sum");
    } else {
      warn("domain membership probe skipped (model dimension too large)");
    }
  }

  MatrixTuple image = f(scaled);

  PowerSeries s;
  s.in_vars = f.in_vars;
  s.out_vars = f.out_vars;
  s.max_len = max_len;
  const int zero_col = fock.index_of(Word::empty());
  for (int i = 0; i < fock.dim(); ++i) {
    const Word& w = fock.word_at(i);
    double rescale = std::pow(delta, -static_cast<double>(w.size()));
    Vec v(f.out_vars);
    for (int c = 0; c < f.out_vars; ++c)
      v(c) = image[c](i, zero_col) * rescale;
    s.set_coeff(w, v);
  }
  return s;
}

MatrixTuple homogeneous_part(const FreeMapHandle& f, int m,
                             const MatrixTuple& x, int samples) {
  if (m < 0) throw std::invalid_argument("homogeneous_part: negative degree");
  int n_samples = samples > 0 ? samples : std::max(2 * (m + 1), 16);
  const int n = x.dim();
  std::vector<Mat> acc(f.out_vars, Mat::Zero(n, n));
  for (int k = 0; k < n_samples; ++k) {
    double t = 2.0 * M_PI * k / n_samples;
    Complex phase = std::exp(Complex(0.0, t));
    MatrixTuple rx = x.scaled(phase);
    if (f.domain && !contains(*f.domain, rx).is_member())
      throw std::runtime_error(
          "homogeneous_part: rotated sample point left the domain");
    MatrixTuple y = f(rx);
    Complex weight = std::exp(Complex(0.0, -m * t));
    for (int c = 0; c < f.out_vars; ++c) acc[c] += weight * y[c];
  }
  for (Mat& a : acc) a /= static_cast<double>(n_samples);
  return MatrixTuple(std::move(acc));
}

SeriesValue eval_series(const PowerSeries& s, const MatrixTuple& x,
                        int order) {
  if (order < 0 || order > s.max_len)
    throw std::invalid_argument(
        "eval_series: order must lie in [0, max_len]");
  if (x.arity() != s.in_vars)
    throw std::invalid_argument("eval_series: arity mismatch");
  const int n = x.dim();
  std::vector<Mat> acc(s.out_vars, Mat::Zero(n, n));
  for (const auto& [w, v] : s.coeffs) {
    if (static_cast<int>(w.size()) > order) continue;
    Mat xw = eval_word(w, x);
    for (int c = 0; c < s.out_vars; ++c)
      if (v(c) != Complex(0.0, 0.0)) acc[c] += v(c) * xw;
  }
  SeriesValue out{MatrixTuple(std::move(acc)), std::nullopt};
  if (s.bound) {
    double rho = std::sqrt(std::max(0.0, x.row_norm_sq()));
    double r = rho / s.bound->eps;
    if (r < 1.0)
      out.tail_bound = s.bound->c * std::pow(r, order + 1) / (1.0 - r);
  }
  return out;
}

JordanProbeReport jordan_degree_probe(const FreeMapHandle& f, int m,
                                      const MatrixTuple& x, double delta) {
  if (m < 0) throw std::invalid_argument("jordan_degree_probe: negative degree");
  const int n = x.dim();
  const int jd = m + 1;
  Mat jordan = Mat::Zero(jd, jd);
  for (int k = 0; k + 1 < jd; ++k) jordan(k, k + 1) = 1.0;

  std::vector<Mat> big;
  for (int j = 0; j < f.in_vars; ++j) big.push_back(kron(x[j], jordan));
  MatrixTuple y(std::move(big));
  if (f.domain && !contains(*f.domain, y).is_member())
    throw std::runtime_error(
        "jordan_degree_probe: inflated point left the domain");
  MatrixTuple fy = f(y);

  PowerSeries s = extract_coeffs(f, m, delta);
  std::vector<Mat> top(f.out_vars, Mat::Zero(n, n));
  for (const auto& [w, v] : s.coeffs) {
    if (static_cast<int>(w.size()) != m) continue;
    Mat xw = eval_word(w, x);
    for (int c = 0; c < f.out_vars; ++c)
      if (v(c) != Complex(0.0, 0.0)) top[c] += v(c) * xw;
  }

  Mat jpow = Mat::Identity(jd, jd);
  for (int k = 0; k < m; ++k) jpow = jpow * jordan;

  JordanProbeReport rep{0.0, 1.0};
  for (int c = 0; c < f.out_vars; ++c) {
    rep.residual = std::max(rep.residual, (fy[c] - kron(top[c], jpow)).norm());
    rep.scale = std::max(rep.scale, 1.0 + fy[c].norm() + top[c].norm());
  }
  return rep;
}

}  // namespace freecert
