#include <doctest.h>

#include <cmath>
#include <freecert/certs.hpp>
#include <freecert/json_io.hpp>
#include <freecert/poly_text.hpp>

using namespace freecert;

namespace {

LinearPencil cube_pencil() {
  Mat a1 = Mat::Zero(4, 4), a2 = Mat::Zero(4, 4);
  a1(0, 0) = 1.0;
  a1(1, 1) = -1.0;
  a2(2, 2) = 1.0;
  a2(3, 3) = -1.0;
  return LinearPencil::monic({a1, a2});
}

LinearPencil half_pencil() {
  return LinearPencil::monic({Mat::Identity(1, 1) * 0.5,
                              Mat::Identity(1, 1) * 0.5});
}

LinearPencil diag_pencil() {
  // diag(1 - x, 1 + x) as a monic pencil in one variable.
  Mat a = Mat::Zero(2, 2);
  a(0, 0) = 1.0;
  a(1, 1) = -1.0;
  return LinearPencil::monic({a});
}

}  // namespace

TEST_CASE("cube dominates the half-space cut with a verified Kraus map") {
  DominationReport rep = lmi_dominate(cube_pencil(), half_pencil());
  REQUIRE(rep.status == SdpStatus::feasible);
  REQUIRE(rep.cert.has_value());
  CHECK(rep.cert->residual <= 1e-7);
  CHECK(static_cast<int>(rep.cert->v.size()) <= 4);  // mu <= d1 d2
  for (const Mat& v : rep.cert->v) {
    CHECK(v.rows() == 4);
    CHECK(v.cols() == 1);
  }
  DominationCheck chk =
      verify_domination(cube_pencil(), half_pencil(), rep.cert->v);
  CHECK(chk.valid);
  CHECK(chk.unital_residual <= 1e-7);
  CHECK(chk.coeff_residual <= 1e-7);

  // Soundness sampling: members of the cube satisfy the half-space LMI.
  Rng rng(42);
  PointwiseProbe probe =
      check_domination_pointwise(cube_pencil(), half_pencil(), rng, 150, 3);
  CHECK_FALSE(probe.violation.has_value());
  CHECK(probe.worst_margin > -1e-9);
}

TEST_CASE("the hand-built domination certificate verifies") {
  // v = (1/sqrt 2, 0, 1/sqrt 2, 0): v*v = 1, v* A1 v = v* A2 v = 1/2.
  Mat v = Mat::Zero(4, 1);
  v(0, 0) = v(2, 0) = 1.0 / std::sqrt(2.0);
  DominationCheck chk = verify_domination(cube_pencil(), half_pencil(), {v});
  CHECK(chk.valid);
  CHECK(chk.unital_residual <= 1e-12);
  CHECK(chk.coeff_residual <= 1e-12);

  // Dropping the normalization breaks unitality and the check notices.
  DominationCheck bad =
      verify_domination(cube_pencil(), half_pencil(), {Mat(2.0 * v)});
  CHECK_FALSE(bad.valid);
  CHECK(bad.unital_residual > 1.0);
}

TEST_CASE("self-domination admits the identity certificate") {
  LinearPencil cube = cube_pencil();
  DominationReport rep = lmi_dominate(cube, cube);
  REQUIRE(rep.status == SdpStatus::feasible);
  DominationCheck chk = verify_domination(cube, cube, {Mat::Identity(4, 4)});
  CHECK(chk.valid);
  CHECK(chk.unital_residual == 0.0);
  CHECK(chk.coeff_residual == 0.0);
}

TEST_CASE("cube does not dominate 1 - 2 x1 and a witness is produced") {
  LinearPencil narrow = LinearPencil::monic({Mat::Identity(1, 1) * 2.0,
                                             Mat::Zero(1, 1)});
  DominationReport rep = lmi_dominate(cube_pencil(), narrow);
  REQUIRE(rep.status == SdpStatus::infeasible);
  CHECK(rep.refutation_conclusive);
  REQUIRE(rep.witness.has_value());
  CHECK(rep.witness->margin_in > 0.0);
  CHECK(rep.witness->margin_out < 0.0);
  CHECK(verify_domination_witness(cube_pencil(), narrow, rep.witness->x));
  REQUIRE(rep.farkas.has_value());

  // The classical scalar witness x = (0.6, 0).
  MatrixTuple hand = MatrixTuple::scalars({Complex(0.6, 0), Complex(0, 0)});
  CHECK(verify_domination_witness(cube_pencil(), narrow, hand));
  MatrixTuple inside = MatrixTuple::scalars({Complex(0.1, 0), Complex(0, 0)});
  CHECK_FALSE(verify_domination_witness(cube_pencil(), narrow, inside));
}

TEST_CASE("unbounded base domain renders the refutation inconclusive") {
  LinearPencil l1 = LinearPencil::monic({Mat::Identity(1, 1)});
  LinearPencil l2 = LinearPencil::monic({Mat::Identity(1, 1) * 0.5});
  // Pointwise X <= I does imply X/2 <= I... yet the Choi system is
  // infeasible: its constraints force tr C = 1 and tr C = 1/2 at once.
  // This is the documented failure mode on unbounded domains.
  DominationReport rep = lmi_dominate(l1, l2);
  REQUIRE(rep.status == SdpStatus::infeasible);
  CHECK_FALSE(rep.refutation_conclusive);
  CHECK_FALSE(rep.witness.has_value());
  REQUIRE(rep.farkas.has_value());
  CHECK(rep.note.find("unbounded") != std::string::npos);

  // The hand refutation of the equality system: y = (1, -1) on the pair
  // (tr C = 1, tr C = 1/2) scaled into the solver's normalization.
  SdpProblem choi;
  choi.block_dims = {1};
  SdpConstraint c1, c2;
  c1.data = {Mat::Identity(1, 1)};
  c1.rhs = 1.0;
  c2.data = {Mat::Identity(1, 1)};
  c2.rhs = 0.5;
  choi.constraints = {c1, c2};
  FarkasCertificate hand;
  hand.y = Eigen::VectorXd(2);
  hand.y << 1.0, -1.0;
  CHECK(check_farkas(choi, hand).valid);
}

TEST_CASE("domination rejects mismatched inputs") {
  CHECK_THROWS_AS(lmi_dominate(cube_pencil(), diag_pencil()),
                  std::invalid_argument);  // arity 2 vs 1
  LinearPencil herm =
      LinearPencil::hermitian_form({Mat::Identity(1, 1), Mat::Identity(1, 1)});
  CHECK_THROWS_AS(lmi_dominate(cube_pencil(), herm), std::invalid_argument);
  LinearPencil hom =
      LinearPencil::homogeneous({Mat::Identity(1, 1), Mat::Identity(1, 1)});
  CHECK_THROWS_AS(lmi_dominate(hom, hom), std::invalid_argument);
}

TEST_CASE("psatz certifies 1 - x^2 over diag(1-x, 1+x) at cap 1") {
  FreePoly p = parse_poly("1 - x^2");
  PsatzReport rep = psatz(p, diag_pencil());
  CHECK(rep.degree_cap == 1);
  REQUIRE(rep.status == SdpStatus::feasible);
  REQUIRE(rep.cert.has_value());
  PsatzCheck chk = verify_psatz(p, diag_pencil(), *rep.cert);
  CHECK(chk.valid);
  CHECK(chk.residual <= 1e-7);
  for (const FreePoly& s : rep.cert->s) CHECK(s.degree() <= 1);
  for (const auto& fk : rep.cert->f)
    for (const FreePoly& comp : fk) CHECK(comp.degree() <= 1);
}

TEST_CASE("the hand-built psatz certificate for 1 - x^2 is exact") {
  // 1 - x^2 = f1*(1-x)f1 + f2*(1+x)f2 with f = ((1+x), (-1+x))/sqrt 2.
  const double r = 1.0 / std::sqrt(2.0);
  FreePoly f1 = parse_poly("1 + x").scaled(r);
  FreePoly f2 = parse_poly("-1 + x").scaled(r);
  PsatzCertificate cert;
  cert.degree_cap = 1;
  cert.f = {{f1, f2}};
  FreePoly p = parse_poly("1 - x^2");
  PsatzCheck chk = verify_psatz(p, diag_pencil(), cert);
  CHECK(chk.valid);
  CHECK(chk.residual <= 1e-12);

  // Truncating f1 to its constant part leaves the documented defect
  // x - x^2/2 - x^3/2, and verification pinpoints the x^2 coefficient.
  PsatzCertificate trunc = cert;
  trunc.f[0][0] = FreePoly::constant(1, Complex(r, 0));
  PsatzCheck bad = verify_psatz(p, diag_pencil(), trunc);
  CHECK_FALSE(bad.valid);
  CHECK(std::abs(bad.defect.coeff(Word({1, 1}))(0, 0) - Complex(-0.5)) <=
        1e-12);
  CHECK(std::abs(bad.defect.coeff(Word({1}))(0, 0) - Complex(1.0)) <= 1e-12);
  CHECK(bad.residual == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("psatz refuses p = x and accepts the scalar witness -1/2") {
  FreePoly p = parse_poly("x");
  PsatzReport rep = psatz(p, diag_pencil());
  REQUIRE(rep.status == SdpStatus::infeasible);
  REQUIRE(rep.witness.has_value());
  CHECK(rep.witness->value_margin < 0.0);
  CHECK(rep.witness->domain_margin > 0.0);

  MatrixTuple hand = MatrixTuple::scalars({Complex(-0.5, 0)});
  CHECK(verify_psatz_witness(p, diag_pencil(), hand));
  MatrixTuple not_witness = MatrixTuple::scalars({Complex(0.5, 0)});
  CHECK_FALSE(verify_psatz_witness(p, diag_pencil(), not_witness));
}

TEST_CASE("constants certify trivially") {
  PsatzReport rep = psatz(parse_poly("1"), diag_pencil());
  REQUIRE(rep.status == SdpStatus::feasible);
  CHECK(rep.degree_cap == 0);
  PsatzCheck chk = verify_psatz(parse_poly("1"), diag_pencil(), *rep.cert);
  CHECK(chk.valid);
}

TEST_CASE("psatz input validation") {
  CHECK_THROWS_AS(psatz(parse_poly("i x", 1), diag_pencil()),
                  std::invalid_argument);  // not symmetric
  CHECK_THROWS_AS(psatz(parse_poly("x1'", 1), diag_pencil()),
                  std::invalid_argument);  // starred letters
  CHECK_THROWS_AS(psatz(parse_poly("x1 + x2", 2), diag_pencil()),
                  std::invalid_argument);  // arity mismatch

  // Certificates beyond the declared cap are rejected by the verifier.
  PsatzCertificate oversized;
  oversized.degree_cap = 1;
  oversized.s = {parse_poly("x^2", 1)};
  CHECK_THROWS_AS(verify_psatz(parse_poly("1 - x^2"), diag_pencil(), oversized),
                  std::invalid_argument);
}

TEST_CASE("randomized sound psatz instances re-certify") {
  Rng rng(2718);
  LinearPencil l = diag_pencil();
  int done = 0;
  for (int trial = 0; trial < 4; ++trial) {
    // p = s*s + f* L f from random degree-1 data is certifiable by
    // construction.
    FreePoly s = FreePoly::constant(1, Complex(rng.normal(), 0)) +
                 FreePoly::variable(1, 1).scaled(Complex(rng.normal(), 0));
    std::vector<FreePoly> f;
    for (int a = 0; a < l.dim(); ++a)
      f.push_back(FreePoly::constant(1, Complex(rng.normal(), 0)) +
                  FreePoly::variable(1, 1).scaled(Complex(rng.normal(), 0)));
    FreePoly p = s.symmetric_adjoint() * s;
    FreePoly lpoly = l.to_poly();
    for (int a = 0; a < l.dim(); ++a)
      for (int b = 0; b < l.dim(); ++b) {
        FreePoly entry(1, 1, 1);
        for (const auto& [w, c] : lpoly.terms())
          entry.add_term(w, Mat::Constant(1, 1, c(a, b)));
        p = p + f[a].symmetric_adjoint() * entry * f[b];
      }

    PsatzReport rep = psatz(p, l);
    REQUIRE(rep.status == SdpStatus::feasible);
    PsatzCheck chk = verify_psatz(p, l, *rep.cert);
    CHECK(chk.valid);
    CHECK(chk.residual <= 1e-6 * (1.0 + 1.0));
    ++done;
  }
  CHECK(done == 4);
}

TEST_CASE("unitary equivalence of pencil coefficient tuples") {
  Rng rng(555);
  Mat a1 = rng.gaussian_hermitian(3), a2 = rng.gaussian_hermitian(3);
  LinearPencil l = LinearPencil::monic({a1, a2});

  SUBCASE("a pencil is equivalent to itself") {
    EquivReport rep = unitary_equiv_check(l, l);
    CHECK(rep.verdict == EquivVerdict::equivalent);
    REQUIRE(rep.u.has_value());
    CHECK(rep.residual <= 1e-8);
  }

  SUBCASE("conjugated coefficients are recognized") {
    Mat u = rng.random_unitary(3);
    LinearPencil lc = LinearPencil::monic(
        {Mat(u * a1 * u.adjoint()), Mat(u * a2 * u.adjoint())});
    EquivReport rep = unitary_equiv_check(l, lc);
    CHECK(rep.verdict == EquivVerdict::equivalent);
    REQUIRE(rep.u.has_value());
    for (int j = 0; j < 2; ++j) {
      Mat moved = *rep.u * l.coeff(j) * rep.u->adjoint();
      CHECK((moved - lc.coeff(j)).norm() <= 1e-7 * (1.0 + lc.coeff(j).norm()));
    }
  }

  SUBCASE("trace invariants refute diag(1,2) vs diag(1,3)") {
    Mat d1 = Mat::Zero(2, 2), d2 = Mat::Zero(2, 2);
    d1.diagonal() << 1.0, 2.0;
    d2.diagonal() << 1.0, 3.0;
    EquivReport rep = unitary_equiv_check(LinearPencil::monic({d1}),
                                          LinearPencil::monic({d2}));
    CHECK(rep.verdict == EquivVerdict::not_equivalent);
    CHECK(rep.trace_gap > 0.5);
  }

  SUBCASE("nilpotent block vs its adjoint: equivalent via the flip") {
    Mat n = Mat::Zero(2, 2);
    n(0, 1) = 1.0;
    LinearPencil ln = LinearPencil::hermitian_form({n});
    LinearPencil lnt = LinearPencil::hermitian_form({Mat(n.adjoint())});
    EquivReport rep = unitary_equiv_check(ln, lnt);
    CHECK(rep.verdict == EquivVerdict::equivalent);
  }
}

TEST_CASE("certificate json round trips") {
  Mat v = Mat::Zero(4, 1);
  v(0, 0) = v(2, 0) = 1.0 / std::sqrt(2.0);
  KrausCertificate kc;
  kc.v = {v};
  kc.choi = v * v.adjoint();
  kc.residual = 1e-12;
  Json kj = kraus_cert_to_json(kc);
  std::vector<Mat> back = kraus_from_json(kj);
  REQUIRE(back.size() == 1);
  CHECK((back[0] - v).norm() == 0.0);
  CHECK(verify_domination(cube_pencil(), half_pencil(), back).valid);

  const double r = 1.0 / std::sqrt(2.0);
  PsatzCertificate pc;
  pc.degree_cap = 1;
  pc.f = {{parse_poly("1 + x").scaled(r), parse_poly("-1 + x").scaled(r)}};
  PsatzCertificate pback = psatz_cert_from_json(psatz_cert_to_json(pc, 0.0));
  CHECK(pback.degree_cap == 1);
  PsatzCheck chk = verify_psatz(parse_poly("1 - x^2"), diag_pencil(), pback);
  CHECK(chk.valid);
  CHECK(chk.residual <= 1e-12);
}
