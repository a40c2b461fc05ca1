#pragma once

#include <map>
#include <optional>
#include <vector>

#include "freecert/freemap.hpp"
#include "freecert/word.hpp"

namespace freecert {

struct GrowthBound {
  double c;    ///< uniform bound on ||f|| over the eps-ball
  double eps;  ///< radius the bound refers to
};

/// Power-series data of a free map around 0: one coefficient vector in
/// C^{out_vars} per plain word of length <= max_len.  Exactly-zero vectors
/// are dropped.
struct PowerSeries {
  int in_vars = 0;
  int out_vars = 0;
  int max_len = 0;
  std::map<Word, Vec, GradedLexLess> coeffs;
  std::optional<GrowthBound> bound;

  Vec coeff(const Word& w) const;
  void set_coeff(const Word& w, const Vec& v);

  /// Attaches bound metadata after validating ||F_w|| <= C / eps^{|w|}
  /// up to a 1+1e-9 factor; throws otherwise.
  void attach_bound(double c, double eps);

  /// One scalar polynomial per output component (plain words).
  std::vector<FreePoly> to_polys() const;
  static PowerSeries from_polys(const std::vector<FreePoly>& components,
                                int max_len);
};

/// Recovers all coefficients with |w| <= max_len from evaluations of f at
/// delta times the creation tuple of the truncated word model.  Exact (up to
/// rounding) for polynomials of degree <= max_len and for maps analytic at 0,
/// since the scaled creation tuple is nilpotent.  When f carries an eps-ball
/// domain, delta must be below eps; other domain kinds are probed and a
/// warning is recorded if the scaled tuple falls outside.  max_len > 20 is
/// flagged as numerically hopeless.
PowerSeries extract_coeffs(const FreeMapHandle& f, int max_len, double delta,
                           std::vector<std::string>* warnings = nullptr,
                           long dim_cap = 100000);

/// Degree-m part of f at X by phase averaging:
///   (1/N) sum_k f(e^{i t_k} X) e^{-i m t_k},  t_k = 2 pi k / N.
/// N defaults to max(2(m+1), 16).  Exact for polynomial f of degree < N when
/// m < N.  Throws when a rotated point leaves the declared domain.
MatrixTuple homogeneous_part(const FreeMapHandle& f, int m,
                             const MatrixTuple& x, int samples = 0);

struct SeriesValue {
  MatrixTuple value;
  std::optional<double> tail_bound;  ///< C r^{M+1} / (1-r) when metadata allows
};

/// Partial sum sum_{|w| <= order} F_w (x) X^w.  order must not exceed the
/// stored max_len.  The tail bound is filled in when bound metadata is
/// present and the row norm of X is below bound.eps.
SeriesValue eval_series(const PowerSeries& s, const MatrixTuple& x, int order);

struct JordanProbeReport {
  double residual;  ///< || f(X (x) J) - S_m(X) (x) J^m ||, J the nilpotent block
  double scale;
};

/// Degree test for a map the caller asserts is homogeneous of degree m:
/// evaluates f on X (x) J with J the nilpotent Jordan block of size m+1 and
/// compares against (degree-m part of f)(X) tensored into the top corner.
JordanProbeReport jordan_degree_probe(const FreeMapHandle& f, int m,
                                      const MatrixTuple& x,
                                      double delta = 0.5);

}  // namespace freecert
