#include <doctest.h>

#include <freecert/linalg.hpp>
#include <freecert/pencil.hpp>
#include <freecert/poly.hpp>
#include <freecert/poly_text.hpp>
#include <freecert/rng.hpp>
#include <freecert/tuple.hpp>
#include <freecert/word.hpp>

using namespace freecert;

TEST_CASE("word involutions and ordering") {
  Word u({1, -2, 1});
  CHECK(u.size() == 3);
  CHECK(u.index(1) == 2);
  CHECK(u.starred(1));
  CHECK(u.adjoint() == Word({-1, 2, -1}));
  CHECK(u.adjoint().adjoint() == u);
  CHECK(u.reversed() == Word({1, -2, 1}));
  CHECK(Word({1, 2}).reversed() == Word({2, 1}));
  CHECK(u.concat(Word({2})) == Word({1, -2, 1, 2}));
  CHECK(Word::empty().concat(u) == u);
  CHECK(u.str() == "x1.x2*.x1");
  CHECK_THROWS_AS(Word({1, 0}), std::invalid_argument);

  // Graded lex: length first, then x1 < x1* < x2 < x2*.
  std::vector<Word> expect = {
      Word::empty(),   Word({1}),       Word({-1}),     Word({2}),
      Word({-2}),      Word({1, 1}),    Word({1, -1}),  Word({1, 2})};
  for (size_t i = 0; i + 1 < expect.size(); ++i) {
    CHECK(graded_lex_less(expect[i], expect[i + 1]));
    CHECK_FALSE(graded_lex_less(expect[i + 1], expect[i]));
  }
  CHECK_FALSE(graded_lex_less(u, u));
}

TEST_CASE("free polynomial arithmetic is exact on integer data") {
  // p = 2 + x1 x2, q = x2* - x1.
  FreePoly p(2, 1, 1);
  p.add_term(Word::empty(), Mat::Identity(1, 1) * 2.0);
  p.add_term(Word({1, 2}), Mat::Identity(1, 1));
  FreePoly q(2, 1, 1);
  q.add_term(Word({-2}), Mat::Identity(1, 1));
  q.add_term(Word({1}), -Mat::Identity(1, 1));

  FreePoly r = p * q;
  CHECK(r.degree() == 3);
  CHECK(r.coeff(Word({-2}))(0, 0) == Complex(2.0));
  CHECK(r.coeff(Word({1}))(0, 0) == Complex(-2.0));
  CHECK(r.coeff(Word({1, 2, -2}))(0, 0) == Complex(1.0));
  CHECK(r.coeff(Word({1, 2, 1}))(0, 0) == Complex(-1.0));
  CHECK(r.coeff(Word::empty())(0, 0) == Complex(0.0));

  // Distributivity holds exactly for these integer coefficients.
  FreePoly s = parse_poly("x1 - 3 x2 x1", 2);
  CHECK((p + q) * s == p * s + q * s);

  // Adjoint reverses words, conjugates, and is an involution.
  FreePoly pa = r.adjoint();
  CHECK(pa.coeff(Word({2, -2, -1}))(0, 0) == Complex(1.0));
  CHECK(pa.adjoint() == r);

  CHECK(FreePoly::zero(2).is_zero());
  CHECK((p - p).is_zero());
}

TEST_CASE("word and polynomial evaluation on explicit tuples") {
  Mat x1(2, 2), x2(2, 2);
  x1 << Complex(0, 0), Complex(1, 0), Complex(0, 0), Complex(0, 0);
  x2 << Complex(1, 0), Complex(0, 0), Complex(0, 0), Complex(-1, 0);
  MatrixTuple x(std::vector<Mat>{x1, x2});

  CHECK(eval_word(Word::empty(), x) == Mat::Identity(2, 2));
  CHECK(eval_word(Word({1}), x) == x1);
  CHECK(eval_word(Word({-1}), x) == Mat(x1.adjoint()));
  // x1 x2 computed by hand: [[0,-1],[0,0]].
  Mat x1x2 = eval_word(Word({1, 2}), x);
  CHECK(x1x2(0, 1) == Complex(-1.0));
  CHECK(x1x2(0, 0) == Complex(0.0));
  CHECK(x1x2(1, 0) == Complex(0.0));
  CHECK(x1x2(1, 1) == Complex(0.0));

  // Multiplicativity of word evaluation.
  Rng rng(7);
  MatrixTuple y(std::vector<Mat>{rng.gaussian(3, 3), rng.gaussian(3, 3)});
  Word u({1, -2}), v({2, 2, -1});
  CHECK((eval_word(u.concat(v), y) - eval_word(u, y) * eval_word(v, y)).norm() ==
        doctest::Approx(0.0).epsilon(1e-12));

  // eval_poly matches a hand-assembled value for p = 2 + x1 x2.
  FreePoly p = parse_poly("2 + x1 x2", 2);
  Mat pv = eval_poly(p, x);
  Mat expect = 2.0 * Mat::Identity(2, 2) + x1 * x2;
  CHECK((pv - expect).norm() == 0.0);

  // Scalar polynomials act blockwise on direct sums.
  MatrixTuple xy = direct_sum(x, y);
  Mat top = eval_poly(p, x), bot = eval_poly(p, y), both = eval_poly(p, xy);
  CHECK((both.topLeftCorner(2, 2) - top).norm() == 0.0);
  CHECK((both.bottomRightCorner(3, 3) - bot).norm() == 0.0);
  CHECK(both.topRightCorner(2, 3).norm() == 0.0);

  // Adjoint compatibility: p*(X) = p(X)*.
  FreePoly q = parse_poly("x1 x2 - 3 i x2' x1", 2);
  CHECK((eval_poly(q.adjoint(), y) - eval_poly(q, y).adjoint()).norm() <=
        1e-13 * eval_poly(q, y).norm());
}

TEST_CASE("matrix-coefficient polynomials use Kronecker block layout") {
  // p = C (x) x1 with C = [[1,2],[3,4]]: value at X must be kron(C, X1).
  Mat c(2, 2);
  c << 1.0, 2.0, 3.0, 4.0;
  FreePoly p(1, 2, 2);
  p.add_term(Word({1}), c);
  Rng rng(3);
  Mat x1 = rng.gaussian(3, 3);
  MatrixTuple x(std::vector<Mat>{x1});
  CHECK((eval_poly(p, x) - kron(c, x1)).norm() == doctest::Approx(0.0));
}

TEST_CASE("tuple helpers") {
  Rng rng(11);
  MatrixTuple x(std::vector<Mat>{rng.gaussian(3, 3), rng.gaussian(3, 3)});
  Mat u = rng.random_unitary(3);

  MatrixTuple xc = unitary_conj(x, u);
  for (int j = 0; j < 2; ++j)
    CHECK((xc[j] - u.adjoint() * x[j] * u).norm() <= 1e-12 * x[j].norm());
  CHECK_THROWS_AS(unitary_conj(x, Mat(2.0 * u)), std::invalid_argument);

  // row_norm_sq is the top eigenvalue of sum X_j X_j^*.
  Mat gram = x[0] * x[0].adjoint() + x[1] * x[1].adjoint();
  CHECK(x.row_norm_sq() == doctest::Approx(lambda_max(gram)).epsilon(1e-12));

  MatrixTuple s = MatrixTuple::scalars({Complex(0.5, 0), Complex(0, -1)});
  CHECK(s.arity() == 2);
  CHECK(s.dim() == 1);
  CHECK(s[1](0, 0) == Complex(0, -1));
}

TEST_CASE("pencil forms evaluate consistently with their polynomial view") {
  Rng rng(5);
  std::vector<Mat> coeffs = {rng.gaussian(2, 2), rng.gaussian(2, 2)};
  MatrixTuple x(std::vector<Mat>{rng.gaussian(3, 3), rng.gaussian(3, 3)});

  LinearPencil hom = LinearPencil::homogeneous(coeffs);
  LinearPencil her = LinearPencil::hermitian_form(coeffs);
  CHECK((eval_pencil(hom, x).value - eval_poly(hom.to_poly(), x)).norm() <=
        1e-12);
  // The hermitian form symmetrizes exactly, so compare against the
  // symmetrized polynomial value.
  Mat raw = eval_poly(her.to_poly(), x);
  CHECK((eval_pencil(her, x).value - herm_part(raw)).norm() <= 1e-12);
  CHECK(is_hermitian(eval_pencil(her, x).value, 1e-13));

  std::vector<Mat> herm_coeffs = {rng.gaussian_hermitian(2),
                                  rng.gaussian_hermitian(2)};
  LinearPencil mon = LinearPencil::monic(herm_coeffs);
  MatrixTuple hx(std::vector<Mat>{rng.gaussian_hermitian(3),
                                  rng.gaussian_hermitian(3)});
  Mat expect = Mat::Identity(6, 6) - kron(herm_coeffs[0], hx[0]) -
               kron(herm_coeffs[1], hx[1]);
  CHECK((eval_pencil(mon, hx).value - expect).norm() <= 1e-12 * expect.norm());
  CHECK(eval_pencil(mon, hx).asymmetry <= 1e-12);

  CHECK_THROWS_AS(LinearPencil::monic({rng.gaussian(2, 2)}),
                  std::invalid_argument);
}

TEST_CASE("polynomial text parsing") {
  FreePoly p = parse_poly("1 - x^2");
  CHECK(p.num_vars() == 1);
  CHECK(p.coeff(Word::empty())(0, 0) == Complex(1.0));
  CHECK(p.coeff(Word({1, 1}))(0, 0) == Complex(-1.0));
  CHECK(p.degree() == 2);

  FreePoly q = parse_poly("2i x1' x2 - x2 x1");
  CHECK(q.num_vars() == 2);
  CHECK(q.coeff(Word({-1, 2}))(0, 0) == Complex(0.0, 2.0));
  CHECK(q.coeff(Word({2, 1}))(0, 0) == Complex(-1.0));

  // Noncommutative expansion: (1+x)(1-x) = 1 - x^2 but (x1+x2)(x1-x2)
  // keeps the cross terms.
  CHECK(parse_poly("(1+x)(1-x)") == parse_poly("1 - x x"));
  FreePoly cross = parse_poly("(x1+x2)(x1-x2)", 2);
  CHECK(cross.coeff(Word({2, 1}))(0, 0) == Complex(1.0));
  CHECK(cross.coeff(Word({1, 2}))(0, 0) == Complex(-1.0));

  CHECK(parse_poly("x^3", 1) == parse_poly("x x x", 1));
  CHECK(parse_poly("i") .coeff(Word::empty())(0, 0) == Complex(0.0, 1.0));
  CHECK(parse_poly("x'", 1).coeff(Word({-1}))(0, 0) == Complex(1.0));

  CHECK_THROWS_AS(parse_poly("x0"), std::invalid_argument);
  CHECK_THROWS_AS(parse_poly("(1+x"), std::invalid_argument);
  CHECK_THROWS_AS(parse_poly("x +"), std::invalid_argument);
  CHECK_THROWS_AS(parse_poly("x3", 2), std::invalid_argument);
}

TEST_CASE("linear algebra helpers") {
  Rng rng(17);
  Mat a = rng.gaussian(2, 3), b = rng.gaussian(3, 2);
  Mat c = rng.gaussian(3, 2), d = rng.gaussian(2, 3);
  // Mixed-product identity (A (x) B)(C (x) D) = AC (x) BD.
  CHECK((kron(a, b) * kron(c, d) - kron((a * c).eval(), (b * d).eval()))
            .norm() <= 1e-12);

  Mat h = rng.gaussian_hermitian(4);
  CHECK(is_hermitian(h, 1e-14));
  Mat g = rng.gaussian(4, 4);
  CHECK_FALSE(is_hermitian(g, 1e-10));
  CHECK((herm_part(g) - 0.5 * (g + g.adjoint())).norm() == 0.0);

  Mat psd = (h * h.adjoint()).eval();
  Mat root = psd_sqrt(psd);
  CHECK((root * root - psd).norm() <= 1e-10 * (1.0 + psd.norm()));
  CHECK(lambda_min(root) >= -1e-12);

  Mat w = rng.well_conditioned(4);
  Mat u = polar_unitary(w);
  CHECK((u.adjoint() * u - Mat::Identity(4, 4)).norm() <= 1e-12);

  CHECK(lambda_max(h) == doctest::Approx(-lambda_min(Mat(-h))).epsilon(1e-12));
  CHECK(operator_norm(u) == doctest::Approx(1.0).epsilon(1e-10));
}

TEST_CASE("seeded rng reproduces its draws") {
  Rng a(42), b(42);
  for (int i = 0; i < 10; ++i) CHECK(a.normal() == b.normal());
  CHECK((a.gaussian(3, 3) - b.gaussian(3, 3)).norm() == 0.0);
  Mat u = a.random_unitary(5);
  CHECK((u * u.adjoint() - Mat::Identity(5, 5)).norm() <= 1e-12);
}
