#include <doctest.h>

#include <freecert/domain.hpp>
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

MatrixTuple scalar2(double x1, double x2) {
  return MatrixTuple::scalars({Complex(x1, 0), Complex(x2, 0)});
}

}  // namespace

TEST_CASE("eps-ball membership at matrix levels") {
  EpsNeighborhood ball{1, 1.0};
  CHECK(domain_arity(ball) == 1);
  CHECK(domain_kind(ball) == "ball");

  auto in = contains(ball, MatrixTuple::scalars({Complex(0.5, 0)}));
  CHECK(in.is_member());
  // Defining matrix is eps^2 I - sum X X*, so the scalar margin is
  // 1 - 0.25.
  CHECK(in.margin == doctest::Approx(0.75).epsilon(1e-12));

  auto edge = contains(ball, MatrixTuple::scalars({Complex(1.0, 0)}));
  CHECK(edge.verdict == Containment::Verdict::boundary);
  auto out = contains(ball, MatrixTuple::scalars({Complex(0.0, 1.2)}));
  CHECK(out.verdict == Containment::Verdict::non_member);
  CHECK(out.margin == doctest::Approx(1.0 - 1.44).epsilon(1e-12));

  // 2x2 non-normal entry: the row gram decides, not eigenvalues of X.
  Mat n = Mat::Zero(2, 2);
  n(0, 1) = 0.9;  // nilpotent, spectrum {0}, but ||X|| = 0.9
  auto nn = contains(ball, MatrixTuple(std::vector<Mat>{n}));
  CHECK(nn.is_member());
  CHECK(nn.margin == doctest::Approx(1.0 - 0.81).epsilon(1e-12));
}

TEST_CASE("lmi domain of the coordinate cube") {
  LmiDomain cube{cube_pencil()};
  CHECK(domain_arity(cube) == 2);

  CHECK(contains(cube, scalar2(0.3, -0.9)).is_member());
  auto out = contains(cube, scalar2(1.5, 0.0));
  CHECK(out.verdict == Containment::Verdict::non_member);
  CHECK(out.margin == doctest::Approx(-0.5).epsilon(1e-12));
  CHECK(contains(cube, scalar2(1.0, 0.0)).verdict ==
        Containment::Verdict::boundary);

  // Hermitian matrix level: membership iff -I < X_j < I for both entries.
  Mat d1(2, 2), d2(2, 2);
  d1 << 0.5, 0, 0, -0.5;
  d2 << 0.0, 0.3, 0.3, 0.0;
  CHECK(contains(cube, MatrixTuple(std::vector<Mat>{d1, d2})).is_member());
  d1(0, 0) = 1.4;
  CHECK(contains(cube, MatrixTuple(std::vector<Mat>{d1, d2})).verdict ==
        Containment::Verdict::non_member);
}

TEST_CASE("semialgebraic component of zero rejects segment dips") {
  // p = 5(x^3 - x): at the hermitian scalar X = 1 the endpoint matrix
  // I + 2 p(1) = 1 is positive, but the segment value at t = 1/sqrt(3)
  // is 1 + 10(t^3 - t) < 0, so X = 1 lies outside the component of 0.
  SemialgDomain dom{parse_poly("5 x^3 - 5 x"), 64};
  auto inside = contains(dom, MatrixTuple::scalars({Complex(0.1, 0)}));
  CHECK(inside.is_member());
  auto cut = contains(dom, MatrixTuple::scalars({Complex(1.0, 0)}));
  CHECK(cut.verdict == Containment::Verdict::non_member);
  CHECK(cut.margin > 0.5);        // endpoint alone looks fine
  CHECK(cut.segment_min < -0.5);  // the sampled segment exposes the dip
}

TEST_CASE("member sampling lands inside and near-boundary sampling is tight") {
  LmiDomain cube{cube_pencil()};
  Rng rng(1234);
  int found = 0;
  for (int t = 0; t < 50; ++t) {
    auto x = sample_member(cube, 1 + t % 3, rng, /*hermitian=*/true);
    if (!x) continue;
    ++found;
    CHECK(contains(cube, *x).is_member());
  }
  CHECK(found >= 45);

  auto nb = sample_near_boundary(cube, 2, rng, 1e-3, /*hermitian=*/true);
  REQUIRE(nb.has_value());
  auto c = contains(cube, *nb);
  CHECK(c.margin < 1e-3);
  CHECK(c.margin > -1e-6);
}

TEST_CASE("boundedness probe separates the cube from a half-space") {
  Rng rng(99);
  LmiDomain cube{cube_pencil()};
  // Members of the cube have sum X_j X_j* <= 2 I.
  auto ok = boundedness_probe(cube, 3.0, 80, rng, 2);
  CHECK_FALSE(ok.violated);
  CHECK(ok.worst_row_norm_sq <= 2.0 + 1e-9);

  // X <= I is unbounded below; a witness with row norm above 4 exists.
  LmiDomain half{LinearPencil::monic({Mat::Identity(1, 1)})};
  auto bad = boundedness_probe(half, 4.0, 80, rng, 2);
  CHECK(bad.violated);
  REQUIRE(bad.witness.has_value());
  CHECK(bad.witness->row_norm_sq() > 16.0);
  CHECK(contains(half, *bad.witness).is_member());
}

TEST_CASE("closure under direct sums and unitary conjugation") {
  Rng rng(7);
  LmiDomain cube{cube_pencil()};
  auto rep = closure_properties_test(cube, 40, rng);
  CHECK(rep.trials > 0);
  CHECK(rep.failures == 0);
  CHECK(rep.max_margin_drift <= 1e-8);
  CHECK(rep.min_sum_margin > -1e-10);

  EpsNeighborhood ball{2, 0.8};
  auto rep2 = closure_properties_test(ball, 40, rng);
  CHECK(rep2.failures == 0);
}

TEST_CASE("the shifted disc pencil carves out |z - 1| < sqrt(2)") {
  LinearPencil disc = shifted_disc_pencil();
  CHECK(disc.form() == PencilForm::hermitian);
  CHECK(disc.num_vars() == 1);
  CHECK(disc.dim() == 2);
  CHECK(disc.coeff(0)(0, 0) == Complex(1.0));
  CHECK(disc.coeff(0)(0, 1) == Complex(1.0));
  CHECK(disc.coeff(0)(1, 0) == Complex(0.0));
  CHECK(disc.coeff(0)(1, 1) == Complex(0.0));

  LmiDomain dom{disc};
  const double r = std::sqrt(2.0);
  for (double re : {-0.4, 0.0, 0.9, 2.3})
    for (double im : {-1.1, 0.0, 0.7}) {
      Complex z(re, im);
      bool inside = std::abs(z - Complex(1.0)) < r - 1e-9;
      bool outside = std::abs(z - Complex(1.0)) > r + 1e-9;
      auto c = contains(dom, MatrixTuple::scalars({z}));
      if (inside) CHECK(c.is_member());
      if (outside) CHECK(c.verdict == Containment::Verdict::non_member);
    }

  // Matrix level: X = I + N with N nilpotent of norm below sqrt(2) stays in.
  Mat x = Mat::Identity(2, 2);
  x(0, 1) = 1.2;
  CHECK(contains(dom, MatrixTuple(std::vector<Mat>{x})).is_member());
  x(0, 1) = 1.5;
  CHECK(contains(dom, MatrixTuple(std::vector<Mat>{x})).verdict ==
        Containment::Verdict::non_member);

  Rng rng(21);
  auto agree = disc_pencil_agreement(60, rng);
  CHECK(agree.samples > 0);
  CHECK(agree.disagreements == 0);
}
