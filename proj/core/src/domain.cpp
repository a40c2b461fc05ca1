#include "freecert/domain.hpp"

#include <cmath>
#include <stdexcept>

namespace freecert {

namespace {

void validate_semialg(const SemialgDomain& s) {
  if (s.p.rows() != s.p.cols())
    throw std::invalid_argument("SemialgDomain: p needs square coefficients");
  if (!s.p.coeff(Word::empty()).isZero(0.0))
    throw std::invalid_argument("SemialgDomain: p(0) must vanish");
  if (s.segment_samples < 1)
    throw std::invalid_argument("SemialgDomain: segment_samples < 1");
}

bool wants_hermitian(const Domain& d) {
  if (const auto* l = std::get_if<LmiDomain>(&d))
    return l->pencil.form() == PencilForm::monic;
  return false;
}

}  // namespace

int domain_arity(const Domain& d) {
  if (const auto* n = std::get_if<EpsNeighborhood>(&d)) return n->num_vars;
  if (const auto* l = std::get_if<LmiDomain>(&d)) return l->pencil.num_vars();
  return std::get<SemialgDomain>(d).p.num_vars();
}

std::string domain_kind(const Domain& d) {
  if (std::holds_alternative<EpsNeighborhood>(d)) return "ball";
  if (std::holds_alternative<LmiDomain>(d)) return "lmi";
  return "semialg";
}

Mat defining_matrix(const Domain& d, const MatrixTuple& x) {
  if (x.arity() != domain_arity(d))
    throw std::invalid_argument("defining_matrix: tuple arity mismatch");
  if (const auto* nb = std::get_if<EpsNeighborhood>(&d)) {
    const int n = x.dim();
    Mat acc = nb->radius * nb->radius * Mat::Identity(n, n);
    for (int j = 0; j < x.arity(); ++j) acc -= x[j] * x[j].adjoint();
    return acc;
  }
  if (const auto* l = std::get_if<LmiDomain>(&d)) {
    if (l->pencil.form() == PencilForm::homogeneous)
      throw std::invalid_argument(
          "LmiDomain: homogeneous pencils do not define a domain; use the "
          "hermitian or monic form");
    return eval_pencil(l->pencil, x).value;
  }
  const auto& s = std::get<SemialgDomain>(d);
  validate_semialg(s);
  Mat p = eval_poly(s.p, x);
  return Mat::Identity(p.rows(), p.cols()) + p + p.adjoint();
}

const char* verdict_name(Containment::Verdict v) {
  switch (v) {
    case Containment::Verdict::member: return "member";
    case Containment::Verdict::boundary: return "boundary";
    case Containment::Verdict::non_member: return "non-member";
  }
  return "?";
}

Containment contains(const Domain& d, const MatrixTuple& x, double tol_base) {
  const double tol = tol_base * (1.0 + x.norm());
  const double margin = lambda_min(defining_matrix(d, x));
  double segment_min = margin;

  if (const auto* s = std::get_if<SemialgDomain>(&d)) {
    // Connected-component semantics: walk the straight segment from 0.
    const int samples = s->segment_samples;
    for (int k = 1; k < samples; ++k) {
      double t = static_cast<double>(k) / samples;
      segment_min =
          std::min(segment_min, lambda_min(defining_matrix(d, x.scaled(t))));
    }
  }

  Containment out;
  out.margin = margin;
  out.segment_min = segment_min;
  out.tol = tol;
  if (std::abs(margin) <= tol)
    out.verdict = Containment::Verdict::boundary;
  else if (margin < 0.0 || segment_min <= tol)
    out.verdict = Containment::Verdict::non_member;
  else
    out.verdict = Containment::Verdict::member;
  return out;
}

std::optional<MatrixTuple> sample_member(const Domain& d, int n, Rng& rng,
                                         bool hermitian, int max_tries) {
  const int g = domain_arity(d);
  hermitian = hermitian || wants_hermitian(d);
  std::vector<Mat> mats;
  mats.reserve(g);
  for (int j = 0; j < g; ++j)
    mats.push_back(hermitian ? rng.gaussian_hermitian(n) : rng.gaussian(n, n));
  MatrixTuple x{std::move(mats)};
  double scale = 1.0;
  for (int k = 0; k < max_tries; ++k) {
    MatrixTuple cand = x.scaled(scale);
    if (contains(d, cand).is_member()) return cand;
    scale *= 0.9;
  }
  return std::nullopt;
}

std::optional<MatrixTuple> sample_near_boundary(const Domain& d, int n,
                                                Rng& rng, double band,
                                                bool hermitian) {
  auto x0 = sample_member(d, n, rng, hermitian);
  if (!x0) return std::nullopt;
  // Escalate along the ray through x0 until the domain is left.
  double lo = 1.0, hi = 1.0;
  bool left = false;
  for (int k = 0; k < 60; ++k) {
    hi *= 2.0;
    if (!contains(d, x0->scaled(hi)).is_member()) {
      left = true;
      break;
    }
    lo = hi;
  }
  if (!left) return std::nullopt;  // unbounded direction
  for (int k = 0; k < 200; ++k) {
    double mid = 0.5 * (lo + hi);
    Containment c = contains(d, x0->scaled(mid));
    if (c.is_member()) {
      if (c.margin < band) return x0->scaled(mid);
      lo = mid;
    } else {
      hi = mid;
    }
  }
  Containment c = contains(d, x0->scaled(lo));
  if (c.is_member() && c.margin < band) return x0->scaled(lo);
  return std::nullopt;
}

BoundednessReport boundedness_probe(const Domain& d, double c_bound,
                                    int trials, Rng& rng, int max_dim) {
  BoundednessReport rep;
  const int g = domain_arity(d);
  const bool herm = wants_hermitian(d);
  const double csq = c_bound * c_bound;

  for (int trial = 0; trial < trials && !rep.violated; ++trial) {
    const int n = 1 + trial % max_dim;
    MatrixTuple x = MatrixTuple::zero(g, n);
    for (int step = 0; step < 3; ++step) {
      std::vector<Mat> dir;
      for (int j = 0; j < g; ++j)
        dir.push_back(herm ? rng.gaussian_hermitian(n) : rng.gaussian(n, n));
      MatrixTuple dt{std::move(dir)};
      double dn = std::max(dt.norm(), 1e-9);
      double cap = 8.0 * (c_bound + 1.0) / dn;
      // Walk out in both directions to bracket the member interval.
      double reach[2] = {0.0, 0.0};
      for (int s = 0; s < 2; ++s) {
        double sign = s ? -1.0 : 1.0;
        double t = 0.25 / dn;
        while (t <= cap &&
               contains(d, x + dt.scaled(sign * t)).is_member()) {
          reach[s] = t;
          t *= 2.0;
        }
      }
      double t = rng.uniform(-reach[1], reach[0]);
      MatrixTuple cand = x + dt.scaled(t);
      if (contains(d, cand).is_member()) x = cand;
    }
    ++rep.samples;
    double rn2 = x.row_norm_sq();
    rep.worst_row_norm_sq = std::max(rep.worst_row_norm_sq, rn2);
    if (rn2 >= csq) {
      rep.violated = true;
      rep.witness = x;
      rep.witness_margin = contains(d, x).margin;
    }
  }
  return rep;
}

ClosureReport closure_properties_test(const Domain& d, int trials, Rng& rng,
                                      int max_dim) {
  ClosureReport rep;
  rep.min_sum_margin = std::numeric_limits<double>::infinity();
  for (int trial = 0; trial < trials; ++trial) {
    const int n = 1 + rng.uniform_int(0, max_dim - 1);
    const int m = 1 + rng.uniform_int(0, max_dim - 1);
    auto x = sample_member(d, n, rng);
    auto y = sample_member(d, m, rng);
    if (!x || !y) continue;
    ++rep.trials;

    Containment cx = contains(d, *x);
    Mat u = rng.random_unitary(n);
    Containment cu = contains(d, unitary_conj(*x, u));
    double drift = std::abs(cu.margin - cx.margin);
    rep.max_margin_drift = std::max(rep.max_margin_drift, drift);
    if (!cu.is_member()) {
      ++rep.failures;
      rep.note = "unitary conjugate of a member left the domain";
    }

    Containment cs = contains(d, direct_sum(*x, *y));
    rep.min_sum_margin = std::min(rep.min_sum_margin, cs.margin);
    if (!cs.is_member()) {
      ++rep.failures;
      rep.note = "direct sum of members left the domain";
    }
  }
  if (rep.trials == 0) rep.min_sum_margin = 0.0;
  return rep;
}

LinearPencil shifted_disc_pencil() {
  Mat a(2, 2);
  a << Complex(1, 0), Complex(1, 0), Complex(0, 0), Complex(0, 0);
  return LinearPencil::hermitian_form({a});
}

DiscAgreementReport disc_pencil_agreement(int samples, Rng& rng, int max_dim,
                                          double tol_base) {
  DiscAgreementReport rep;
  Domain disc{LmiDomain{shifted_disc_pencil()}};
  const double sqrt2 = std::sqrt(2.0);
  for (int k = 0; k < samples; ++k) {
    const int n = 1 + rng.uniform_int(0, max_dim - 1);
    MatrixTuple x{{rng.gaussian(n, n) * rng.uniform(0.0, 1.2)}};
    double tol = tol_base * (1.0 + x.norm());
    Containment c = contains(disc, x);
    double norm_margin = sqrt2 - operator_norm(x[0] - Mat::Identity(n, n));
    if (c.verdict == Containment::Verdict::boundary ||
        std::abs(norm_margin) <= tol)
      continue;
    ++rep.samples;
    bool pencil_in = c.is_member();
    bool norm_in = norm_margin > 0.0;
    if (pencil_in != norm_in) {
      ++rep.disagreements;
      rep.max_margin_gap = std::max(rep.max_margin_gap,
                                    std::abs(std::min(c.margin, norm_margin)));
      if (!rep.witness) rep.witness = x;
    }
  }
  return rep;
}

}  // namespace freecert
