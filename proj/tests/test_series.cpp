#include <doctest.h>

#include <cmath>
#include <freecert/freemap.hpp>
#include <freecert/poly_text.hpp>
#include <freecert/series.hpp>

using namespace freecert;

TEST_CASE("coefficient extraction is exact on polynomial maps") {
  // Two-variable map with two output components; every coefficient is an
  // integer, so recovery should be exact to rounding.
  std::vector<FreePoly> comps = {parse_poly("x1 + x1 x2 - 3 x2 x2 x1", 2),
                                 parse_poly("2 - x2 + 5 x1 x1", 2)};
  FreeMapHandle f = poly_map(comps);
  PowerSeries s = extract_coeffs(f, 4, 0.5);

  CHECK(s.coeff(Word::empty())(0) == Complex(0.0));
  CHECK(s.coeff(Word::empty())(1) == Complex(2.0));
  CHECK(std::abs(s.coeff(Word({1}))(0) - Complex(1.0)) <= 1e-12);
  CHECK(std::abs(s.coeff(Word({1, 2}))(0) - Complex(1.0)) <= 1e-12);
  CHECK(std::abs(s.coeff(Word({2, 2, 1}))(0) - Complex(-3.0)) <= 1e-12);
  CHECK(std::abs(s.coeff(Word({2}))(1) - Complex(-1.0)) <= 1e-12);
  CHECK(std::abs(s.coeff(Word({1, 1}))(1) - Complex(5.0)) <= 1e-12);
  // Nothing else appears.
  CHECK(s.coeff(Word({2, 1}))(0) == Complex(0.0));
  CHECK(s.coeffs.size() == 6);

  // Round trip through the polynomial view.
  std::vector<FreePoly> back = s.to_polys();
  REQUIRE(back.size() == 2);
  for (int c = 0; c < 2; ++c) {
    FreePoly diff = back[c] - comps[c];
    for (const auto& [w, m] : diff.terms())
      CHECK(m.norm() <= 1e-12);
  }

  // from_polys inverts to_polys.
  PowerSeries s2 = PowerSeries::from_polys(comps, 4);
  CHECK(s2.coeffs.size() == s.coeffs.size());
  for (const auto& [w, v] : s2.coeffs)
    CHECK((s.coeff(w) - v).norm() <= 1e-12);
}

TEST_CASE("extraction validates input and warns about risky settings") {
  FreeMapHandle f = identity_map(2);
  f.domain = EpsNeighborhood{2, 0.25};
  CHECK_THROWS_AS(extract_coeffs(f, 3, 0.5), std::invalid_argument);
  CHECK_THROWS_AS(extract_coeffs(f, 3, 0.0), std::invalid_argument);

  std::vector<std::string> warnings;
  extract_coeffs(f, 3, 0.1, &warnings);
  CHECK(warnings.empty());

  // An LMI domain that excludes the scaled creation tuple draws a warning
  // but extraction still proceeds (nilpotent evaluation is a finite sum).
  FreeMapHandle g = ftheta(0.3);
  warnings.clear();
  PowerSeries s = extract_coeffs(g, 3, 0.4, &warnings);
  CHECK(s.coeffs.size() > 0);
}

TEST_CASE("series evaluation converges and reports a usable tail bound") {
  const double theta = 1.1;
  FreeMapHandle f = ftheta(theta);
  PowerSeries s = extract_coeffs(f, 10, 0.3);

  // Attach the exact uniform bound on the eps-ball: for g = 1 the sup of
  // ||f_theta|| over ||X|| <= eps is eps / (1 - |1 - e^{i theta}| eps)
  // by the maximum modulus principle plus von Neumann's inequality.
  const double eps = 0.3;
  const double q = std::abs(Complex(1, 0) - std::exp(Complex(0, theta)));
  const double c = eps / (1.0 - q * eps);
  s.attach_bound(c, eps);

  Mat x = Mat::Zero(2, 2);
  x(0, 0) = 0.05;
  x(0, 1) = 0.08;
  x(1, 1) = -0.04;
  MatrixTuple xt(std::vector<Mat>{x});
  MatrixTuple exact = f(xt);

  SeriesValue v = eval_series(s, xt, 10);
  REQUIRE(v.tail_bound.has_value());
  double err = (v.value[0] - exact[0]).norm();
  CHECK(err <= *v.tail_bound * (1.0 + 1e-9) + 1e-12);
  CHECK(err <= 1e-6);

  // Lower orders give a larger bound and a larger error.
  SeriesValue v3 = eval_series(s, xt, 3);
  CHECK(*v3.tail_bound > *v.tail_bound);
  CHECK_THROWS_AS(eval_series(s, xt, 11), std::invalid_argument);
}

TEST_CASE("homogeneous parts by phase averaging") {
  std::vector<FreePoly> comps = {parse_poly("x1 - 2 x2 x1 + x1 x1 x2", 2)};
  FreeMapHandle f = poly_map(comps);
  Rng rng(9);
  MatrixTuple x(std::vector<Mat>{rng.gaussian(3, 3), rng.gaussian(3, 3)});

  MatrixTuple h1 = homogeneous_part(f, 1, x);
  MatrixTuple h2 = homogeneous_part(f, 2, x);
  MatrixTuple h3 = homogeneous_part(f, 3, x);
  MatrixTuple h4 = homogeneous_part(f, 4, x);

  CHECK((h1[0] - x[0]).norm() <= 1e-10 * x[0].norm());
  Mat expect2 = -2.0 * x[1] * x[0];
  CHECK((h2[0] - expect2).norm() <= 1e-10 * (1.0 + expect2.norm()));
  Mat expect3 = x[0] * x[0] * x[1];
  CHECK((h3[0] - expect3).norm() <= 1e-10 * (1.0 + expect3.norm()));
  CHECK(h4[0].norm() <= 1e-10 * (1.0 + x[0].norm()));

  // Degree parts sum back to the map on polynomials.
  Mat sum = h1[0] + h2[0] + h3[0];
  CHECK((sum - f(x)[0]).norm() <= 1e-9 * (1.0 + sum.norm()));
}

TEST_CASE("jordan probe accepts homogeneous maps and flags inhomogeneity") {
  FreeMapHandle cubic = poly_map({parse_poly("x1 x2 x1", 2)});
  Rng rng(13);
  MatrixTuple x(std::vector<Mat>{rng.gaussian(2, 2), rng.gaussian(2, 2)});
  JordanProbeReport good = jordan_degree_probe(cubic, 3, x);
  CHECK(good.residual <= 1e-9 * (1.0 + good.scale));

  FreeMapHandle mixed = poly_map({parse_poly("x1 + x1 x2 x1", 2)});
  JordanProbeReport bad = jordan_degree_probe(mixed, 3, x);
  CHECK(bad.residual > 1e-3);
}

TEST_CASE("power series container semantics") {
  PowerSeries s;
  s.in_vars = 1;
  s.out_vars = 1;
  s.max_len = 2;
  Vec v(1);
  v << Complex(3.0);
  s.set_coeff(Word({1}), v);
  CHECK(s.coeffs.size() == 1);
  v << Complex(0.0);
  s.set_coeff(Word({1}), v);  // exact zero drops the entry
  CHECK(s.coeffs.empty());
  CHECK(s.coeff(Word({1})).norm() == 0.0);

  v << Complex(100.0);
  s.set_coeff(Word({1, 1}), v);
  CHECK_THROWS_AS(s.set_coeff(Word({1, 1, 1}), v), std::invalid_argument);
  CHECK_THROWS_AS(s.attach_bound(1.0, 1.0), std::invalid_argument);
  CHECK_NOTHROW(s.attach_bound(100.0, 1.0));
}
