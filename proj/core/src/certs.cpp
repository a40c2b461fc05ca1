#include "freecert/certs.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>
#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace freecert {

namespace {

std::vector<Mat> hermitian_basis(int d) {
  std::vector<Mat> basis;
  const Complex im(0.0, 1.0);
  for (int t = 0; t < d; ++t) {
    Mat e = Mat::Zero(d, d);
    e(t, t) = 1.0;
    basis.push_back(e);
  }
  for (int r = 0; r < d; ++r)
    for (int s = r + 1; s < d; ++s) {
      Mat e = Mat::Zero(d, d);
      e(r, s) = e(s, r) = 1.0;
      basis.push_back(e);
      Mat o = Mat::Zero(d, d);
      o(r, s) = im;
      o(s, r) = -im;
      basis.push_back(o);
    }
  return basis;
}

// The coefficient pairs (P, Q) an admissible map must respect: Phi(P) = Q.
// All entries are Hermitian; hermitian-form pencils contribute the Hermitian
// and skew parts of each coefficient as independent pairs.
std::vector<std::pair<Mat, Mat>> coefficient_pairs(const LinearPencil& l1,
                                                   const LinearPencil& l2) {
  if (l1.form() == PencilForm::homogeneous ||
      l2.form() == PencilForm::homogeneous)
    throw std::invalid_argument(
        "domination: homogeneous pencils have no affine domain");
  if (l1.form() != l2.form())
    throw std::invalid_argument("domination: pencil forms must match");
  if (l1.num_vars() != l2.num_vars())
    throw std::invalid_argument("domination: variable counts must match");
  const int d1 = l1.dim(), d2 = l2.dim();
  std::vector<std::pair<Mat, Mat>> pairs;
  pairs.emplace_back(Mat::Identity(d1, d1), Mat::Identity(d2, d2));
  const Complex mi(0.0, -1.0);
  for (int j = 0; j < l1.num_vars(); ++j) {
    const Mat& a1 = l1.coeff(j);
    const Mat& a2 = l2.coeff(j);
    if (l1.form() == PencilForm::monic) {
      pairs.emplace_back(a1, a2);
    } else {
      pairs.emplace_back(0.5 * (a1 + a1.adjoint()), 0.5 * (a2 + a2.adjoint()));
      pairs.emplace_back(0.5 * mi * (a1 - a1.adjoint()),
                         0.5 * mi * (a2 - a2.adjoint()));
    }
  }
  return pairs;
}

// Choi-matrix feasibility problem: C >= 0 on C^{d1} (x) C^{d2} with
// tr[(P^T (x) H_t) C] = tr(H_t Q) over a Hermitian basis {H_t} of M_{d2}.
SdpProblem build_domination_problem(const LinearPencil& l1,
                                    const LinearPencil& l2) {
  const int d1 = l1.dim(), d2 = l2.dim();
  SdpProblem prob;
  prob.block_dims = {d1 * d2};
  const std::vector<Mat> basis = hermitian_basis(d2);
  for (const auto& [p, q] : coefficient_pairs(l1, l2))
    for (const Mat& h : basis) {
      SdpConstraint con;
      con.data.push_back(kron(p.transpose().eval(), h));
      con.rhs = (h * q).trace().real();
      prob.constraints.push_back(std::move(con));
    }
  return prob;
}

std::vector<Mat> kraus_from_choi(const Mat& choi, int d1, int d2, double cutoff,
                                 double* truncation) {
  Eigen::SelfAdjointEigenSolver<Mat> es(choi);
  std::vector<Mat> v;
  *truncation = 0.0;
  for (int i = 0; i < es.eigenvalues().size(); ++i) {
    double lam = es.eigenvalues()[i];
    if (lam <= cutoff) {
      if (lam > 0.0) *truncation = std::max(*truncation, lam);
      continue;
    }
    Vec vec = es.eigenvectors().col(i);
    Mat k(d1, d2);
    for (int p = 0; p < d1; ++p)
      for (int a = 0; a < d2; ++a) k(p, a) = std::conj(vec[p * d2 + a]);
    v.push_back(std::sqrt(lam) * k);
  }
  return v;
}

SdpSolveOptions options_from(const RunConfig& cfg) {
  SdpSolveOptions opts;
  opts.feas_margin = cfg.tol.sdp_feas_margin;
  opts.eig_floor = cfg.tol.sdp_eig_floor;
  opts.constraint_tol = cfg.tol.sdp_constraint;
  opts.dim_cap = cfg.caps.max_sdp_dim;
  return opts;
}

}  // namespace

DominationCheck verify_domination(const LinearPencil& l1,
                                  const LinearPencil& l2,
                                  const std::vector<Mat>& kraus, double tol) {
  const int d1 = l1.dim(), d2 = l2.dim();
  DominationCheck out;
  Mat unit = Mat::Zero(d2, d2);
  for (const Mat& v : kraus) {
    if (v.rows() != d1 || v.cols() != d2)
      throw std::invalid_argument("verify_domination: Kraus shape mismatch");
    unit += v.adjoint() * v;
  }
  out.unital_residual = operator_norm(unit - Mat::Identity(d2, d2));
  double scale = 1.0;
  for (const auto& [p, q] : coefficient_pairs(l1, l2)) {
    Mat img = Mat::Zero(d2, d2);
    for (const Mat& v : kraus) img += v.adjoint() * p * v;
    out.coeff_residual = std::max(out.coeff_residual, operator_norm(img - q));
    scale = std::max(scale, operator_norm(p));
  }
  out.valid = out.unital_residual <= tol &&
              out.coeff_residual <= tol * (1.0 + scale);
  return out;
}

bool verify_domination_witness(const LinearPencil& l1, const LinearPencil& l2,
                               const MatrixTuple& x, double tol) {
  double band = tol * (1.0 + x.norm());
  return lambda_min(eval_pencil(l1, x).value) > band &&
         lambda_min(eval_pencil(l2, x).value) < -band;
}

PointwiseProbe check_domination_pointwise(const LinearPencil& l1,
                                          const LinearPencil& l2, Rng& rng,
                                          int trials, int max_size) {
  PointwiseProbe probe;
  Domain d1 = LmiDomain{l1};
  bool herm = l1.form() == PencilForm::monic;
  double worst = std::numeric_limits<double>::infinity();
  for (int t = 0; t < trials; ++t) {
    int n = 1 + t % max_size;
    auto x = sample_member(d1, n, rng, herm);
    if (!x) continue;
    ++probe.trials;
    double m2 = lambda_min(eval_pencil(l2, *x).value);
    worst = std::min(worst, m2);
    if (m2 < -1e-7 * (1.0 + x->norm()) && !probe.violation) {
      DominationWitness w;
      w.x = *x;
      w.margin_in = lambda_min(eval_pencil(l1, *x).value);
      w.margin_out = m2;
      probe.violation = std::move(w);
    }
  }
  probe.worst_margin = probe.trials ? worst : 0.0;
  return probe;
}

DominationReport lmi_dominate(const LinearPencil& l1, const LinearPencil& l2,
                              const RunConfig& cfg) {
  SdpProblem prob = build_domination_problem(l1, l2);
  SdpSolution sol = solve(prob, options_from(cfg));
  DominationReport rep;
  rep.status = sol.status;
  rep.lambda_star = sol.lambda_star;
  rep.sdp_iterations = sol.iterations;

  if (sol.status == SdpStatus::feasible) {
    double cutoff =
        cfg.tol.kraus_truncation *
        std::max(1.0, sol.z[0].size() ? lambda_max(sol.z[0]) : 1.0);
    KrausCertificate cert;
    cert.choi = sol.z[0];
    cert.v = kraus_from_choi(sol.z[0], l1.dim(), l2.dim(), cutoff,
                             &cert.truncation);
    DominationCheck chk =
        verify_domination(l1, l2, cert.v, cfg.tol.cert_residual);
    cert.residual = std::max(chk.unital_residual, chk.coeff_residual);
    if (chk.valid) {
      rep.cert = std::move(cert);
      rep.note = "certificate verified symbolically";
    } else {
      rep.status = SdpStatus::marginal;
      rep.cert = std::move(cert);
      rep.note = "SDP reported feasible but the recovered map failed "
                 "verification";
    }
    return rep;
  }

  if (sol.status == SdpStatus::infeasible) {
    rep.farkas = sol.farkas;
    Rng rng(cfg.effective_seed());
    PointwiseProbe probe = check_domination_pointwise(l1, l2, rng, 400, 3);
    if (probe.violation) rep.witness = probe.violation;
    // Infeasibility refutes domination only over a bounded domain.
    BoundednessReport bnd =
        boundedness_probe(Domain{LmiDomain{l1}}, 100.0, 60, rng, 2);
    rep.refutation_conclusive = !bnd.violated;
    if (bnd.violated)
      rep.note =
          "infeasible, but the base domain shows evidence of unboundedness; "
          "pointwise domination may still hold";
    else if (rep.witness)
      rep.note = "infeasible with point witness";
    else
      rep.note = "infeasible; no point witness found by sampling";
    return rep;
  }

  rep.note = sol.note.empty() ? "solver inconclusive" : sol.note;
  return rep;
}

// ---- Positivstellensatz -----------------------------------------------------

namespace {

std::vector<Word> plain_words(int g, int max_len) {
  std::vector<Word> words{Word{}};
  size_t layer_begin = 0;
  for (int len = 1; len <= max_len; ++len) {
    size_t layer_end = words.size();
    for (size_t i = layer_begin; i < layer_end; ++i)
      for (int j = 1; j <= g; ++j) words.push_back(words[i].concat(Word({j})));
    layer_begin = layer_end;
  }
  return words;
}

// Folded coefficients B_j with L_ab(x) = delta_ab + sum_j (B_j)_ab x_j in the
// symmetric-variable setting.
std::vector<Mat> folded_coeffs(const LinearPencil& l) {
  std::vector<Mat> b;
  for (int j = 0; j < l.num_vars(); ++j) {
    if (l.form() == PencilForm::monic)
      b.push_back(-l.coeff(j));
    else if (l.form() == PencilForm::hermitian)
      b.push_back(l.coeff(j) + l.coeff(j).adjoint());
    else
      throw std::invalid_argument("psatz: homogeneous pencil has no domain");
  }
  return b;
}

struct PsatzModel {
  std::vector<Word> basis;          // plain words, length <= cap
  std::map<Word, int, GradedLexLess> index;
  int cap = 0;
  int dl = 0;
  std::vector<Mat> b;               // folded pencil coefficients
};

// Word kernel: entry [r, c] = 1 iff rev(basis[c]) * t * basis[r] == m.
Mat word_kernel(const PsatzModel& mdl, const Word& m, const Word& t) {
  const int n = static_cast<int>(mdl.basis.size());
  Mat k = Mat::Zero(n, n);
  for (int c = 0; c < n; ++c) {
    Word left = mdl.basis[c].reversed().concat(t);
    int rest = static_cast<int>(m.size()) - static_cast<int>(left.size());
    if (rest < 0 || rest > mdl.cap) continue;
    // m must start with `left`; the remainder indexes the row word.
    bool match = true;
    for (std::size_t i = 0; i < left.size(); ++i)
      if (m.letters()[i] != left.letters()[i]) {
        match = false;
        break;
      }
    if (!match) continue;
    Word tail(std::vector<int>(
        m.letters().begin() + static_cast<long>(left.size()),
        m.letters().end()));
    auto it = mdl.index.find(tail);
    if (it != mdl.index.end()) k(it->second, c) = 1.0;
  }
  return k;
}

// Raw (possibly non-Hermitian) functionals R with tr(R G) / tr(R H) equal to
// the coefficient of word m in s*s and sum f* L f respectively.
void raw_functionals(const PsatzModel& mdl, const Word& m, Mat* rg, Mat* rh) {
  *rg = word_kernel(mdl, m, Word{});
  Mat idl = Mat::Identity(mdl.dl, mdl.dl);
  *rh = kron(*rg, idl);
  for (size_t j = 0; j < mdl.b.size(); ++j) {
    Mat kj = word_kernel(mdl, m, Word({static_cast<int>(j) + 1}));
    if (kj.cwiseAbs().maxCoeff() != 0.0)
      *rh += kron(kj, mdl.b[j].transpose().eval());
  }
}

SdpProblem build_psatz_problem(const FreePoly& p, const PsatzModel& mdl) {
  const int n = static_cast<int>(mdl.basis.size());
  SdpProblem prob;
  prob.block_dims = {n, n * mdl.dl};
  const Complex half(0.5, 0.0);
  const Complex halfi(0.0, -0.5);  // (R - R^*)/(2i)
  for (const Word& m : plain_words(static_cast<int>(mdl.b.size()),
                                   2 * mdl.cap + 1)) {
    Word rm = m.reversed();
    if (graded_lex_less(rm, m)) continue;  // canonical representative only
    Mat rg, rh;
    raw_functionals(mdl, m, &rg, &rh);
    Complex pm = p.coeff(m)(0, 0);
    {
      SdpConstraint con;
      con.data.push_back(half * (rg + rg.adjoint()));
      con.data.push_back(half * (rh + rh.adjoint()));
      con.rhs = pm.real();
      prob.constraints.push_back(std::move(con));
    }
    if (!(rm == m)) {
      SdpConstraint con;
      con.data.push_back(halfi * (rg - rg.adjoint()));
      con.data.push_back(halfi * (rh - rh.adjoint()));
      con.rhs = pm.imag();
      prob.constraints.push_back(std::move(con));
    }
  }
  return prob;
}

FreePoly pencil_entry_poly(const PsatzModel& mdl, int a, int b, int g) {
  FreePoly e = FreePoly::constant(g, a == b ? Complex(1.0) : Complex(0.0));
  for (size_t j = 0; j < mdl.b.size(); ++j) {
    Complex c = mdl.b[j](a, b);
    if (c != Complex(0.0))
      e.add_term(Word({static_cast<int>(j) + 1}),
                 c * Mat::Identity(1, 1));
  }
  return e;
}

}  // namespace

PsatzCheck verify_psatz(const FreePoly& p, const LinearPencil& l,
                        const PsatzCertificate& cert, double tol) {
  if (!p.is_scalar())
    throw std::invalid_argument("verify_psatz: p must be scalar");
  const int g = p.num_vars();
  const int cap = (p.degree() + 1) / 2;
  for (const FreePoly& s : cert.s)
    if (s.degree() > cap || s.has_starred_letters())
      throw std::invalid_argument(
          "verify_psatz: s part violates the degree cap");
  for (const auto& f : cert.f) {
    if (static_cast<int>(f.size()) != l.dim())
      throw std::invalid_argument("verify_psatz: f entry count != pencil dim");
    for (const FreePoly& e : f)
      if (e.degree() > cap || e.has_starred_letters())
        throw std::invalid_argument(
            "verify_psatz: f part violates the degree cap");
  }

  PsatzModel mdl;
  mdl.dl = l.dim();
  mdl.b = folded_coeffs(l);
  FreePoly sum = FreePoly::zero(g);
  for (const FreePoly& s : cert.s) sum = sum + s.symmetric_adjoint() * s;
  for (const auto& f : cert.f)
    for (int a = 0; a < mdl.dl; ++a)
      for (int b = 0; b < mdl.dl; ++b) {
        FreePoly lab = pencil_entry_poly(mdl, a, b, g);
        if (lab.is_zero()) continue;
        sum = sum + f[a].symmetric_adjoint() * lab * f[b];
      }

  PsatzCheck out;
  out.defect = p - sum;
  double pmax = 0.0;
  for (const auto& [w, c] : p.terms())
    pmax = std::max(pmax, c.cwiseAbs().maxCoeff());
  for (const auto& [w, c] : out.defect.terms())
    out.residual = std::max(out.residual, c.cwiseAbs().maxCoeff());
  out.valid = out.residual <= tol * (1.0 + pmax);
  return out;
}

bool verify_psatz_witness(const FreePoly& p, const LinearPencil& l,
                          const MatrixTuple& x, double tol) {
  double band = tol * (1.0 + x.norm());
  return lambda_min(eval_pencil(l, x).value) > band &&
         lambda_min(herm_part(eval_poly(p, x))) < -band;
}

PsatzReport psatz(const FreePoly& p, const LinearPencil& l,
                  const RunConfig& cfg, std::optional<int> cap) {
  if (!p.is_scalar()) throw std::invalid_argument("psatz: p must be scalar");
  if (p.has_starred_letters())
    throw std::invalid_argument("psatz: p must use plain words");
  if (p.num_vars() != l.num_vars())
    throw std::invalid_argument("psatz: variable counts must match");
  {
    FreePoly sym_defect = p - p.symmetric_adjoint();
    for (const auto& [w, c] : sym_defect.terms())
      if (c.cwiseAbs().maxCoeff() > 1e-12)
        throw std::invalid_argument("psatz: p is not symmetric");
  }

  PsatzModel mdl;
  mdl.cap = cap.value_or((p.degree() + 1) / 2);
  if (mdl.cap < 0) throw std::invalid_argument("psatz: negative degree cap");
  mdl.dl = l.dim();
  mdl.b = folded_coeffs(l);
  mdl.basis = plain_words(p.num_vars(), mdl.cap);
  for (size_t i = 0; i < mdl.basis.size(); ++i)
    mdl.index.emplace(mdl.basis[i], static_cast<int>(i));

  SdpProblem prob = build_psatz_problem(p, mdl);
  SdpSolution sol = solve(prob, options_from(cfg));
  PsatzReport rep;
  rep.status = sol.status;
  rep.degree_cap = mdl.cap;
  rep.lambda_star = sol.lambda_star;
  rep.sdp_iterations = sol.iterations;

  if (sol.status == SdpStatus::feasible) {
    PsatzCertificate cert;
    cert.degree_cap = mdl.cap;
    cert.gram_s = sol.z[0];
    cert.gram_f = sol.z[1];
    const int n = static_cast<int>(mdl.basis.size());
    const int g = p.num_vars();
    double trunc = 0.0;
    {
      double cutoff = cfg.tol.kraus_truncation *
                      std::max(1.0, lambda_max(sol.z[0]));
      Eigen::SelfAdjointEigenSolver<Mat> es(sol.z[0]);
      for (int i = 0; i < n; ++i) {
        double lam = es.eigenvalues()[i];
        if (lam <= cutoff) {
          if (lam > 0.0) trunc = std::max(trunc, lam);
          continue;
        }
        FreePoly s = FreePoly::zero(g);
        for (int u = 0; u < n; ++u) {
          Complex c = std::sqrt(lam) * std::conj(es.eigenvectors()(u, i));
          if (c != Complex(0.0))
            s.add_term(mdl.basis[u], c * Mat::Identity(1, 1));
        }
        cert.s.push_back(std::move(s));
      }
    }
    {
      double cutoff = cfg.tol.kraus_truncation *
                      std::max(1.0, lambda_max(sol.z[1]));
      Eigen::SelfAdjointEigenSolver<Mat> es(sol.z[1]);
      for (int i = 0; i < n * mdl.dl; ++i) {
        double lam = es.eigenvalues()[i];
        if (lam <= cutoff) {
          if (lam > 0.0) trunc = std::max(trunc, lam);
          continue;
        }
        std::vector<FreePoly> f(mdl.dl, FreePoly::zero(g));
        for (int u = 0; u < n; ++u)
          for (int a = 0; a < mdl.dl; ++a) {
            Complex c =
                std::sqrt(lam) * std::conj(es.eigenvectors()(u * mdl.dl + a, i));
            if (c != Complex(0.0))
              f[a].add_term(mdl.basis[u], c * Mat::Identity(1, 1));
          }
        cert.f.push_back(std::move(f));
      }
    }
    cert.truncation = trunc;
    PsatzCheck chk = verify_psatz(p, l, cert, cfg.tol.cert_residual);
    if (chk.valid) {
      rep.cert = std::move(cert);
      rep.note = "certificate verified symbolically (residual " +
                 std::to_string(chk.residual) + ")";
    } else {
      rep.status = SdpStatus::marginal;
      rep.cert = std::move(cert);
      rep.note = "SDP reported feasible but the recovered certificate failed "
                 "verification (residual " + std::to_string(chk.residual) + ")";
    }
    return rep;
  }

  if (sol.status == SdpStatus::infeasible) {
    rep.farkas = sol.farkas;
    Rng rng(cfg.effective_seed());
    Domain dom = LmiDomain{l};
    for (int t = 0; t < 400 && !rep.witness; ++t) {
      int n = 1 + t % 3;
      auto x = sample_member(dom, n, rng, true);
      if (!x) continue;
      double vm = lambda_min(herm_part(eval_poly(p, *x)));
      if (vm < -1e-7 * (1.0 + x->norm())) {
        PsatzWitness w;
        w.x = *x;
        w.domain_margin = lambda_min(eval_pencil(l, *x).value);
        w.value_margin = vm;
        rep.witness = std::move(w);
      }
    }
    rep.note = rep.witness ? "infeasible with point witness"
                           : "infeasible; no point witness found by sampling";
    return rep;
  }

  rep.note = sol.note.empty() ? "solver inconclusive" : sol.note;
  return rep;
}

// ---- unitary equivalence ----------------------------------------------------

namespace {

// Enumerates *-words (sign patterns included) up to a budget and compares
// normalized traces.
double trace_invariant_gap(const MatrixTuple& a, const MatrixTuple& b,
                           int max_len, long budget) {
  const int g = a.arity();
  double gap = 0.0;
  std::vector<std::pair<Mat, Mat>> layer{{Mat::Identity(a.dim(), a.dim()),
                                          Mat::Identity(b.dim(), b.dim())}};
  long produced = 1;
  for (int len = 1; len <= max_len; ++len) {
    std::vector<std::pair<Mat, Mat>> next;
    for (const auto& [pa, pb] : layer)
      for (int j = 0; j < g; ++j)
        for (int star = 0; star < 2; ++star) {
          if (++produced > budget) return gap;
          Mat xa = star ? a[j].adjoint() : a[j];
          Mat xb = star ? b[j].adjoint() : b[j];
          next.emplace_back(pa * xa, pb * xb);
          gap = std::max(gap, std::abs(next.back().first.trace() -
                                       next.back().second.trace()));
        }
    layer = std::move(next);
  }
  return gap;
}

}  // namespace

const char* equiv_verdict_name(EquivVerdict v) {
  switch (v) {
    case EquivVerdict::equivalent: return "equivalent";
    case EquivVerdict::not_equivalent: return "not_equivalent";
    case EquivVerdict::inconclusive: return "inconclusive";
  }
  return "unknown";
}

EquivReport unitary_equiv_check(const LinearPencil& l1, const LinearPencil& l2,
                                const RunConfig& cfg) {
  EquivReport rep;
  if (l1.num_vars() != l2.num_vars())
    throw std::invalid_argument("unitary_equiv_check: arity mismatch");
  if (l1.dim() != l2.dim()) {
    rep.verdict = EquivVerdict::not_equivalent;
    rep.note = "coefficient sizes differ";
    return rep;
  }
  const int n = l1.dim();
  const int g = l1.num_vars();
  MatrixTuple a(l1.coeffs()), b(l2.coeffs());
  double scale = std::max({1.0, a.norm(), b.norm()});

  rep.trace_gap = trace_invariant_gap(a, b, 6, 20000);
  if (rep.trace_gap > 1e-8 * n * std::pow(scale, 6)) {
    rep.verdict = EquivVerdict::not_equivalent;
    rep.note = "trace invariants differ";
    return rep;
  }

  // Intertwiner space {X : X A_j = B_j X}, via the nullspace of the stacked
  // Kronecker system (A_j^T (x) I - I (x) B_j) vec(X) = 0.
  Mat stacked(g * n * n, n * n);
  Mat eye = Mat::Identity(n, n);
  for (int j = 0; j < g; ++j)
    stacked.middleRows(j * n * n, n * n) =
        kron(a[j].transpose().eval(), eye) - kron(eye, b[j]);
  Eigen::JacobiSVD<Mat> svd(stacked, Eigen::ComputeThinV);
  double null_tol = 1e-10 * std::max(1.0, svd.singularValues()[0]);
  std::vector<Vec> null_basis;
  for (int i = 0; i < svd.singularValues().size(); ++i)
    if (svd.singularValues()[i] <= null_tol)
      null_basis.push_back(svd.matrixV().col(i));
  rep.intertwiner_dim = static_cast<int>(null_basis.size());
  if (null_basis.empty()) {
    rep.verdict = EquivVerdict::not_equivalent;
    rep.note = "no nonzero intertwiner exists";
    return rep;
  }

  auto unvec = [n](const Vec& v) {
    Mat m(n, n);
    for (int c = 0; c < n; ++c) m.col(c) = v.segment(c * n, n);
    return m;
  };
  auto project = [&](const Mat& m) {
    Vec v(n * n);
    for (int c = 0; c < n; ++c) v.segment(c * n, n) = m.col(c);
    Vec proj = Vec::Zero(n * n);
    for (const Vec& q : null_basis) proj += q.dot(v) * q;
    return unvec(proj);
  };
  auto residual_of = [&](const Mat& u) {
    double r = operator_norm(u.adjoint() * u - eye);
    for (int j = 0; j < g; ++j)
      r = std::max(r, operator_norm(u * a[j] * u.adjoint() - b[j]) / scale);
    return r;
  };

  Rng rng(cfg.effective_seed());
  double best = std::numeric_limits<double>::infinity();
  Mat best_u;
  for (int restart = 0; restart < 20; ++restart) {
    Mat u = Mat::Zero(n, n);
    for (const Vec& q : null_basis) u += rng.cnormal() * unvec(q);
    for (int it = 0; it < 100; ++it) {
      Mat projected = project(u);
      if (projected.norm() < 1e-14) break;
      u = polar_unitary(projected);
      double r = residual_of(u);
      if (r < best) {
        best = r;
        best_u = u;
      }
      if (best <= 1e-12) break;
    }
    if (best <= 1e-12) break;
  }
  rep.residual = best;
  if (best <= 1e-8) {
    rep.verdict = EquivVerdict::equivalent;
    rep.u = best_u;
    rep.note = "unitary found in the intertwiner space";
  } else {
    rep.verdict = EquivVerdict::inconclusive;
    rep.note = "nonzero intertwiner space but no unitary located";
  }
  return rep;
}

}  // namespace freecert
