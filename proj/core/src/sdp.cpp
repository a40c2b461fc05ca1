#include "freecert/sdp.hpp"

#include <Eigen/Cholesky>
#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>
#include <iostream>
#include <limits>
#include <stdexcept>

namespace freecert {

int SdpProblem::total_dim() const {
  int n = 0;
  for (int d : block_dims) n += d;
  return n;
}

void SdpProblem::validate(int dim_cap) const {
  if (block_dims.empty()) throw std::invalid_argument("sdp: no blocks");
  for (int d : block_dims)
    if (d <= 0) throw std::invalid_argument("sdp: nonpositive block dim");
  if (total_dim() > dim_cap)
    throw std::invalid_argument("sdp: total dimension " +
                                std::to_string(total_dim()) +
                                " exceeds cap " + std::to_string(dim_cap));
  auto check_blocks = [&](const std::vector<Mat>& mats, const char* what) {
    if (static_cast<int>(mats.size()) != num_blocks())
      throw std::invalid_argument(std::string("sdp: ") + what +
                                  " has wrong block count");
    for (int i = 0; i < num_blocks(); ++i) {
      const Mat& m = mats[i];
      if (m.size() == 0) continue;
      if (m.rows() != block_dims[i] || m.cols() != block_dims[i])
        throw std::invalid_argument(std::string("sdp: ") + what +
                                    " block shape mismatch");
      if (!is_hermitian(m, 1e-10 * (1.0 + m.cwiseAbs().maxCoeff())))
        throw std::invalid_argument(std::string("sdp: ") + what +
                                    " block not Hermitian");
    }
  };
  for (const SdpConstraint& c : constraints) check_blocks(c.data, "constraint");
  if (objective) check_blocks(*objective, "objective");
}

double SdpProblem::constraint_value(int k, const std::vector<Mat>& z) const {
  const SdpConstraint& c = constraints.at(k);
  double v = 0.0;
  for (int i = 0; i < num_blocks(); ++i) {
    if (c.data[i].size() == 0) continue;
    v += (c.data[i].adjoint() * z[i]).trace().real();
  }
  return v;
}

const char* sdp_status_name(SdpStatus s) {
  switch (s) {
    case SdpStatus::feasible: return "feasible";
    case SdpStatus::infeasible: return "infeasible";
    case SdpStatus::marginal: return "marginal";
    case SdpStatus::max_iterations: return "max_iterations";
    case SdpStatus::ill_conditioned: return "ill_conditioned";
  }
  return "unknown";
}

namespace {

using RMat = Eigen::MatrixXd;
using RVec = Eigen::VectorXd;

// ---- real symmetric block algebra ------------------------------------------

struct BlockSym {
  std::vector<RMat> m;  // one symmetric matrix per block, always full-size
};

double bdot(const BlockSym& a, const BlockSym& b) {
  double s = 0.0;
  for (size_t i = 0; i < a.m.size(); ++i)
    s += a.m[i].cwiseProduct(b.m[i]).sum();
  return s;
}

BlockSym bzero(const std::vector<int>& dims) {
  BlockSym v;
  v.m.reserve(dims.size());
  for (int d : dims) v.m.push_back(RMat::Zero(d, d));
  return v;
}

BlockSym bidentity(const std::vector<int>& dims, double scale) {
  BlockSym v;
  for (int d : dims) v.m.push_back(scale * RMat::Identity(d, d));
  return v;
}

void baxpy(double a, const BlockSym& x, BlockSym* y) {
  for (size_t i = 0; i < x.m.size(); ++i) y->m[i] += a * x.m[i];
}

void bsymmetrize(BlockSym* x) {
  for (RMat& b : x->m) b = 0.5 * (b + b.transpose()).eval();
}

double bmax_abs(const BlockSym& x) {
  double v = 0.0;
  for (const RMat& b : x.m)
    if (b.size() > 0) v = std::max(v, b.cwiseAbs().maxCoeff());
  return v;
}

// Real-embedded problem fed to the interior-point kernel.
struct RealSdp {
  std::vector<int> dims;
  std::vector<BlockSym> a;  // constraint data
  RVec b;
  BlockSym c;               // objective (zero blocks if absent)
  int total() const {
    int n = 0;
    for (int d : dims) n += d;
    return n;
  }
};

RVec apply_A(const RealSdp& p, const BlockSym& x) {
  RVec v(p.b.size());
  for (int k = 0; k < v.size(); ++k) v[k] = bdot(p.a[k], x);
  return v;
}

BlockSym apply_AT(const RealSdp& p, const RVec& y) {
  BlockSym s = bzero(p.dims);
  for (int k = 0; k < y.size(); ++k)
    if (y[k] != 0.0) baxpy(y[k], p.a[k], &s);
  return s;
}

// Largest t with P + t dP >= 0, for P > 0 (via Cholesky whitening).
double max_step(const BlockSym& p, const BlockSym& dp, bool* ok) {
  double step = std::numeric_limits<double>::infinity();
  *ok = true;
  for (size_t i = 0; i < p.m.size(); ++i) {
    Eigen::LLT<RMat> llt(p.m[i]);
    if (llt.info() != Eigen::Success) {
      *ok = false;
      return 0.0;
    }
    RMat w = llt.matrixL().solve(dp.m[i]);
    w = llt.matrixL().solve(w.transpose().eval());
    Eigen::SelfAdjointEigenSolver<RMat> es(0.5 * (w + w.transpose()),
                                           Eigen::EigenvaluesOnly);
    double lo = es.eigenvalues().minCoeff();
    if (lo < -1e-14) step = std::min(step, -1.0 / lo);
  }
  return step;
}

struct IpmResult {
  int status = 2;  // 0 converged, 1 max iterations, 2 numerical breakdown
  BlockSym x, z;
  RVec y;
  double pobj = 0.0, dobj = 0.0, rel_gap = 1.0;
  double primal_res = 1.0, dual_res = 1.0;
  int iters = 0;
};

// Dense primal-dual interior point (HKM direction, Mehrotra
// predictor-corrector) for min <C,X> s.t. <A_k,X> = b_k, X >= 0.
IpmResult ipm_solve(const RealSdp& p, const SdpSolveOptions& opts) {
  const int m = static_cast<int>(p.b.size());
  const int n = p.total();
  IpmResult out;

  double data_scale = std::max(1.0, bmax_abs(p.c));
  for (const BlockSym& a : p.a) data_scale = std::max(data_scale, bmax_abs(a));
  double b_scale = std::max(1.0, p.b.size() ? p.b.cwiseAbs().maxCoeff() : 0.0);

  double eta = 10.0 * std::max({1.0, b_scale, data_scale});
  BlockSym X = bidentity(p.dims, eta);
  BlockSym Z = bidentity(p.dims, eta);
  RVec y = RVec::Zero(m);

  double best_err = std::numeric_limits<double>::infinity();
  int stall = 0;

  for (int iter = 0; iter < opts.max_iter; ++iter) {
    out.iters = iter;
    RVec rp = p.b - apply_A(p, X);
    BlockSym rd = p.c;           // Rd = C - Z - A^T y
    baxpy(-1.0, Z, &rd);
    BlockSym aty = apply_AT(p, y);
    baxpy(-1.0, aty, &rd);

    double mu = bdot(X, Z) / n;
    out.pobj = bdot(p.c, X);
    out.dobj = p.b.dot(y);
    out.primal_res = (m ? rp.cwiseAbs().maxCoeff() : 0.0) / b_scale;
    out.dual_res = bmax_abs(rd) / data_scale;
    out.rel_gap = std::abs(out.pobj - out.dobj) /
                  (1.0 + std::abs(out.pobj) + std::abs(out.dobj));

    double err = std::max({out.primal_res, out.dual_res, out.rel_gap});
    if (opts.verbose)
      std::cerr << "ipm " << iter << " mu=" << mu << " pres=" << out.primal_res
                << " dres=" << out.dual_res << " gap=" << out.rel_gap << "\n";
    if (out.primal_res <= opts.tol && out.dual_res <= opts.tol &&
        out.rel_gap <= 10.0 * opts.tol) {
      out.status = 0;
      out.x = X;
      out.z = Z;
      out.y = y;
      return out;
    }
    if (err < best_err * 0.999) {
      best_err = err;
      stall = 0;
    } else if (++stall > 40) {
      break;  // no progress; report what we have
    }

    // Z^{-1} per block.
    std::vector<RMat> zinv(p.dims.size());
    bool zok = true;
    for (size_t i = 0; i < p.dims.size(); ++i) {
      Eigen::LLT<RMat> llt(Z.m[i]);
      if (llt.info() != Eigen::Success) {
        zok = false;
        break;
      }
      zinv[i] = llt.solve(RMat::Identity(p.dims[i], p.dims[i]));
    }
    if (!zok) break;

    // Schur complement M_kl = tr(A_k Z^{-1} A_l X).
    std::vector<BlockSym> zax(m);
    for (int l = 0; l < m; ++l) {
      zax[l].m.resize(p.dims.size());
      for (size_t i = 0; i < p.dims.size(); ++i)
        zax[l].m[i] = zinv[i] * p.a[l].m[i] * X.m[i];
    }
    RMat M(m, m);
    for (int k = 0; k < m; ++k)
      for (int l = 0; l < m; ++l) {
        double s = 0.0;
        for (size_t i = 0; i < p.dims.size(); ++i)
          s += p.a[k].m[i].cwiseProduct(zax[l].m[i].transpose()).sum();
        M(k, l) = s;
      }
    M = 0.5 * (M + M.transpose()).eval();

    double ridge = 0.0;
    Eigen::LDLT<RMat> ldlt;
    for (int attempt = 0; attempt < 8; ++attempt) {
      RMat Mr = M;
      if (ridge > 0.0) Mr.diagonal().array() += ridge;
      ldlt.compute(Mr);
      if (ldlt.info() == Eigen::Success && ldlt.isPositive()) break;
      ridge = (ridge == 0.0) ? 1e-12 * (1.0 + M.diagonal().maxCoeff())
                             : ridge * 100.0;
    }
    if (ldlt.info() != Eigen::Success) break;

    auto zi_times = [&](const BlockSym& s, const BlockSym& t) {
      // Z^{-1} * s * t, blockwise (not symmetric in general).
      BlockSym r;
      r.m.resize(p.dims.size());
      for (size_t i = 0; i < p.dims.size(); ++i)
        r.m[i] = zinv[i] * s.m[i] * t.m[i];
      return r;
    };

    BlockSym zi;
    zi.m = zinv;
    RVec a_zi = apply_A(p, zi);
    RVec a_zirdx = apply_A(p, zi_times(rd, X));

    // Predictor (sigma = 0).  Substituting dX = -X - Z^{-1} dZ X into
    // A(dX) = b - A(X) leaves b (not the residual) on the right-hand side.
    RVec rhs_a = p.b + a_zirdx;
    // dX from dy: dX = sigma*mu*Z^{-1} - X - Z^{-1} (dZ) X  with
    // dZ = Rd - A^T dy;  here sigma = 0.
    RVec dy_a = ldlt.solve(rhs_a);
    BlockSym dz_a = rd;
    BlockSym atdy = apply_AT(p, dy_a);
    baxpy(-1.0, atdy, &dz_a);
    BlockSym dx_a = zi_times(dz_a, X);
    for (size_t i = 0; i < p.dims.size(); ++i)
      dx_a.m[i] = -X.m[i] - dx_a.m[i];
    bsymmetrize(&dx_a);

    bool ok1 = true, ok2 = true;
    double ap = std::min(1.0, max_step(X, dx_a, &ok1));
    double ad = std::min(1.0, max_step(Z, dz_a, &ok2));
    if (!ok1 || !ok2) break;
    BlockSym xa = X, za = Z;
    baxpy(ap, dx_a, &xa);
    baxpy(ad, dz_a, &za);
    double mu_aff = std::max(0.0, bdot(xa, za) / n);
    double sigma = mu > 0 ? std::pow(mu_aff / mu, 3) : 0.1;
    sigma = std::clamp(sigma, 1e-10, 1.0);

    // Corrector.
    RVec a_corr = apply_A(p, zi_times(dz_a, dx_a));
    RVec rhs = p.b - sigma * mu * a_zi + a_zirdx + a_corr;
    RVec dy = ldlt.solve(rhs);
    BlockSym dz = rd;
    BlockSym atdy2 = apply_AT(p, dy);
    baxpy(-1.0, atdy2, &dz);
    BlockSym dx = zi_times(dz, X);
    BlockSym cross = zi_times(dz_a, dx_a);
    for (size_t i = 0; i < p.dims.size(); ++i)
      dx.m[i] = sigma * mu * zinv[i] - X.m[i] - dx.m[i] - cross.m[i];
    bsymmetrize(&dx);

    ap = std::min(1.0, 0.98 * max_step(X, dx, &ok1));
    ad = std::min(1.0, 0.98 * max_step(Z, dz, &ok2));
    if (!ok1 || !ok2) break;
    baxpy(ap, dx, &X);
    baxpy(ad, dz, &Z);
    y += ad * dy;
    bsymmetrize(&X);
    bsymmetrize(&Z);
  }

  out.status = (out.iters >= opts.max_iter - 1) ? 1 : 2;
  out.x = X;
  out.z = Z;
  out.y = y;
  return out;
}

// ---- complex -> real embedding ---------------------------------------------

struct Embedding {
  std::vector<bool> complex_block;  // doubled in the real model?
  std::vector<int> real_dims;
};

bool has_imag(const Mat& m) {
  return m.size() > 0 && m.imag().cwiseAbs().maxCoeff() != 0.0;
}

Embedding plan_embedding(const SdpProblem& p) {
  Embedding e;
  e.complex_block.assign(p.block_dims.size(), false);
  for (const SdpConstraint& c : p.constraints)
    for (size_t i = 0; i < c.data.size(); ++i)
      if (has_imag(c.data[i])) e.complex_block[i] = true;
  if (p.objective)
    for (size_t i = 0; i < p.objective->size(); ++i)
      if (has_imag((*p.objective)[i])) e.complex_block[i] = true;
  for (size_t i = 0; i < p.block_dims.size(); ++i)
    e.real_dims.push_back(p.block_dims[i] * (e.complex_block[i] ? 2 : 1));
  return e;
}

// phi(A) = [[Re A, -Im A], [Im A, Re A]]; data carries a 1/2 so that
// <phi(A)/2, phi(Z)> = Re tr(A^* Z) and constraint values line up across
// mixed real/complex blocks.
RMat embed_data(const Mat& a, int dim, bool complex_block) {
  if (a.size() == 0)
    return RMat::Zero(complex_block ? 2 * dim : dim,
                      complex_block ? 2 * dim : dim);
  if (!complex_block) return a.real();
  RMat r(2 * dim, 2 * dim);
  r.topLeftCorner(dim, dim) = 0.5 * a.real();
  r.bottomRightCorner(dim, dim) = 0.5 * a.real();
  r.topRightCorner(dim, dim) = -0.5 * a.imag();
  r.bottomLeftCorner(dim, dim) = 0.5 * a.imag();
  return r;
}

Mat unembed_psd(const RMat& s, int dim, bool complex_block) {
  if (!complex_block) return s.cast<Complex>();
  // Average over the embedding symmetry; preserves PSD and constraint values.
  Mat z(dim, dim);
  z.real() = 0.5 * (s.topLeftCorner(dim, dim) + s.bottomRightCorner(dim, dim));
  z.imag() =
      0.5 * (s.bottomLeftCorner(dim, dim) - s.topRightCorner(dim, dim));
  z = 0.5 * (z + z.adjoint()).eval();
  return z;
}

RealSdp embed_problem(const SdpProblem& p, const Embedding& e) {
  RealSdp r;
  r.dims = e.real_dims;
  r.b.resize(p.num_constraints());
  for (int k = 0; k < p.num_constraints(); ++k) {
    BlockSym bs;
    for (int i = 0; i < p.num_blocks(); ++i)
      bs.m.push_back(embed_data(p.constraints[k].data[i], p.block_dims[i],
                                e.complex_block[i]));
    r.a.push_back(std::move(bs));
    r.b[k] = p.constraints[k].rhs;
  }
  if (p.objective) {
    for (int i = 0; i < p.num_blocks(); ++i)
      r.c.m.push_back(embed_data((*p.objective)[i], p.block_dims[i],
                                 e.complex_block[i]));
  } else {
    r.c = bzero(r.dims);
  }
  return r;
}

// ---- feasibility pipeline ---------------------------------------------------

// Auxiliary program: variables (W, lp, lm, s) with Z = W + (lp - lm) I,
// lp + s = 1, minimize lm - lp.  Optimum lambda* = lp - lm is the (capped)
// largest uniform eigenvalue shift keeping a solution PSD.
RealSdp build_aux(const RealSdp& base) {
  RealSdp aux;
  aux.dims = base.dims;
  aux.dims.push_back(1);  // lp
  aux.dims.push_back(1);  // lm
  aux.dims.push_back(1);  // s
  const size_t nb = base.dims.size();
  const int m = static_cast<int>(base.b.size());
  aux.b.resize(m + 1);
  for (int k = 0; k < m; ++k) {
    BlockSym bs = base.a[k];
    double tr = 0.0;
    for (size_t i = 0; i < nb; ++i) tr += bs.m[i].trace();
    bs.m.push_back(RMat::Constant(1, 1, tr));    // lp
    bs.m.push_back(RMat::Constant(1, 1, -tr));   // lm
    bs.m.push_back(RMat::Zero(1, 1));            // s
    aux.a.push_back(std::move(bs));
    aux.b[k] = base.b[k];
  }
  // lp + s = 1 (cap so the aux optimum is attained even for unbounded shifts)
  BlockSym cap = bzero(base.dims);
  cap.m.push_back(RMat::Constant(1, 1, 1.0));
  cap.m.push_back(RMat::Zero(1, 1));
  cap.m.push_back(RMat::Constant(1, 1, 1.0));
  aux.a.push_back(std::move(cap));
  aux.b[m] = 1.0;
  aux.c = bzero(base.dims);
  aux.c.m.push_back(RMat::Constant(1, 1, -1.0));  // min lm - lp
  aux.c.m.push_back(RMat::Constant(1, 1, 1.0));
  aux.c.m.push_back(RMat::Zero(1, 1));
  return aux;
}

// Alternative (refutation) program over y = y+ - y-:
//   sum_k y_k A_k + delta I + P = 0  entrywise on each block, P >= 0,
//   b.y - t = 0,  t >= 0,  sum(y+ + y-) + delta = 1,  maximize delta.
// A solution with delta > 0 gives sum y_k A_k <= -delta I and b.y >= 0.
struct AltOutcome {
  bool solved = false;
  RVec y;
  double delta = 0.0;
};

AltOutcome solve_alternative(const RealSdp& base, const SdpSolveOptions& opts,
                             bool favor_bty) {
  const int m = static_cast<int>(base.b.size());
  const size_t nb = base.dims.size();
  RealSdp alt;
  alt.dims = base.dims;            // P blocks
  for (int k = 0; k < 2 * m; ++k) alt.dims.push_back(1);  // y+, y-
  alt.dims.push_back(1);           // delta
  alt.dims.push_back(1);           // t
  auto yp_index = [&](int k) { return nb + k; };
  auto ym_index = [&](int k) { return nb + m + k; };
  const size_t delta_index = nb + 2 * m;
  const size_t t_index = nb + 2 * m + 1;

  std::vector<BlockSym> rows;
  std::vector<double> rhs;
  // Entrywise matching on the symmetric basis of every P block.
  for (size_t i = 0; i < nb; ++i) {
    int d = base.dims[i];
    for (int r = 0; r < d; ++r)
      for (int s = r; s < d; ++s) {
        BlockSym row = bzero(alt.dims);
        RMat basis = RMat::Zero(d, d);
        basis(r, s) = basis(s, r) = (r == s) ? 1.0 : 0.5;
        row.m[i] = basis;
        for (int k = 0; k < m; ++k) {
          double coeff = base.a[k].m[i](r, s);
          row.m[yp_index(k)](0, 0) = coeff;
          row.m[ym_index(k)](0, 0) = -coeff;
        }
        row.m[delta_index](0, 0) = (r == s) ? 1.0 : 0.0;
        rows.push_back(std::move(row));
        rhs.push_back(0.0);
      }
  }
  {  // b.y - t = 0
    BlockSym row = bzero(alt.dims);
    for (int k = 0; k < m; ++k) {
      row.m[yp_index(k)](0, 0) = base.b[k];
      row.m[ym_index(k)](0, 0) = -base.b[k];
    }
    row.m[t_index](0, 0) = -1.0;
    rows.push_back(std::move(row));
    rhs.push_back(0.0);
  }
  {  // normalization
    BlockSym row = bzero(alt.dims);
    for (int k = 0; k < m; ++k) {
      row.m[yp_index(k)](0, 0) = 1.0;
      row.m[ym_index(k)](0, 0) = 1.0;
    }
    row.m[delta_index](0, 0) = 1.0;
    rows.push_back(std::move(row));
    rhs.push_back(1.0);
  }
  alt.a = std::move(rows);
  alt.b = Eigen::Map<RVec>(rhs.data(), rhs.size());
  alt.c = bzero(alt.dims);
  if (favor_bty)
    alt.c.m[t_index](0, 0) = -1.0;   // maximize b.y instead
  else
    alt.c.m[delta_index](0, 0) = -1.0;  // maximize delta

  SdpSolveOptions aopts = opts;
  aopts.max_iter = std::max(opts.max_iter, 300);
  IpmResult res = ipm_solve(alt, aopts);
  AltOutcome out;
  if (res.status == 2 && res.iters < 5) return out;
  out.solved = true;
  out.y.resize(m);
  for (int k = 0; k < m; ++k)
    out.y[k] = res.x.m[yp_index(k)](0, 0) - res.x.m[ym_index(k)](0, 0);
  out.delta = res.x.m[delta_index](0, 0);
  return out;
}

}  // namespace

FarkasCheck check_farkas(const SdpProblem& p, const FarkasCertificate& c,
                         double tol) {
  FarkasCheck out;
  if (c.y.size() != p.num_constraints()) {
    out.reason = "certificate length mismatch";
    return out;
  }
  double data_scale = 1.0;
  double lmax = -std::numeric_limits<double>::infinity();
  for (int i = 0; i < p.num_blocks(); ++i) {
    Mat e = Mat::Zero(p.block_dims[i], p.block_dims[i]);
    for (int k = 0; k < p.num_constraints(); ++k) {
      const Mat& a = p.constraints[k].data[i];
      if (a.size() == 0) continue;
      e += c.y[k] * a;
      data_scale = std::max(data_scale, a.cwiseAbs().maxCoeff());
    }
    lmax = std::max(lmax, lambda_max(e));
  }
  double bnorm = 0.0;
  for (const SdpConstraint& con : p.constraints)
    bnorm = std::max(bnorm, std::abs(con.rhs));
  double bty = 0.0;
  for (int k = 0; k < p.num_constraints(); ++k)
    bty += c.y[k] * p.constraints[k].rhs;
  out.lambda_max = lmax;
  out.b_dot_y = bty;
  if (bnorm == 0.0) {
    out.reason = "zero right-hand side: Z = 0 is always a solution";
    return out;
  }
  double eps = tol * data_scale;
  bool strict_cone = lmax <= -eps && bty >= -tol * (1.0 + bnorm);
  bool strict_obj = lmax <= eps && bty >= 1e-7 * (1.0 + bnorm);
  out.valid = strict_cone || strict_obj;
  if (!out.valid)
    out.reason = "inequalities not satisfied: lambda_max=" +
                 std::to_string(lmax) + " b.y=" + std::to_string(bty);
  return out;
}

SdpSolution solve(const SdpProblem& p, const SdpSolveOptions& opts) {
  p.validate(opts.dim_cap);
  Embedding emb = plan_embedding(p);
  RealSdp base = embed_problem(p, emb);

  double bnorm = base.b.size() ? base.b.cwiseAbs().maxCoeff() : 0.0;
  SdpSolution sol;

  if (p.objective) {
    IpmResult res = ipm_solve(base, opts);
    sol.iterations = res.iters;
    sol.dual_y = res.y;
    sol.primal_objective = res.pobj;
    sol.dual_objective = res.dobj;
    sol.rel_gap = res.rel_gap;
    for (int i = 0; i < p.num_blocks(); ++i)
      sol.z.push_back(
          unembed_psd(res.x.m[i], p.block_dims[i], emb.complex_block[i]));
    double resid = 0.0;
    for (int k = 0; k < p.num_constraints(); ++k)
      resid = std::max(resid,
                       std::abs(p.constraint_value(k, sol.z) -
                                p.constraints[k].rhs));
    sol.constraint_residual = resid;
    double mineig = std::numeric_limits<double>::infinity();
    for (const Mat& z : sol.z) mineig = std::min(mineig, lambda_min(z));
    sol.min_eigenvalue = mineig;
    if (res.status == 0)
      sol.status = SdpStatus::feasible;
    else
      sol.status = (res.status == 1) ? SdpStatus::max_iterations
                                     : SdpStatus::ill_conditioned;
    return sol;
  }

  // Feasibility: solve the eigenvalue-slack program.
  RealSdp aux = build_aux(base);
  IpmResult res = ipm_solve(aux, opts);
  sol.iterations = res.iters;
  const size_t nb = base.dims.size();
  double lp = res.x.m[nb](0, 0), lm = res.x.m[nb + 1](0, 0);
  double lambda_star = lp - lm;
  sol.lambda_star = lambda_star;

  // Recover Z = W + lambda* I and judge it on its own merits.
  std::vector<Mat> z;
  for (int i = 0; i < p.num_blocks(); ++i) {
    RMat s = res.x.m[i] +
             lambda_star * RMat::Identity(base.dims[i], base.dims[i]);
    z.push_back(unembed_psd(s, p.block_dims[i], emb.complex_block[i]));
  }
  double resid = 0.0;
  for (int k = 0; k < p.num_constraints(); ++k)
    resid = std::max(
        resid, std::abs(p.constraint_value(k, z) - p.constraints[k].rhs));
  double mineig = std::numeric_limits<double>::infinity();
  for (const Mat& zb : z) mineig = std::min(mineig, lambda_min(zb));

  bool invariant_ok = resid <= opts.constraint_tol * (1.0 + bnorm) &&
                      mineig >= -opts.eig_floor;
  if (invariant_ok) {
    sol.status = SdpStatus::feasible;
    sol.z = std::move(z);
    sol.constraint_residual = resid;
    sol.min_eigenvalue = mineig;
    sol.strictly_feasible = lambda_star > opts.feas_margin && res.status == 0;
    if (!sol.strictly_feasible)
      sol.note = "solution on or near the cone boundary (lambda_star=" +
                 std::to_string(lambda_star) + ")";
    return sol;
  }

  // No usable point; look for a refutation.
  for (bool favor_bty : {false, true}) {
    AltOutcome alt = solve_alternative(base, opts, favor_bty);
    if (!alt.solved) continue;
    FarkasCertificate cert;
    cert.y = alt.y;
    FarkasCheck chk = check_farkas(p, cert, 1e-9);
    if (chk.valid) {
      cert.delta = std::max(0.0, -chk.lambda_max);
      cert.b_dot_y = chk.b_dot_y;
      sol.status = SdpStatus::infeasible;
      sol.farkas = cert;
      sol.constraint_residual = resid;
      sol.min_eigenvalue = mineig;
      return sol;
    }
  }

  sol.constraint_residual = resid;
  sol.min_eigenvalue = mineig;
  sol.status = (res.status == 2) ? SdpStatus::ill_conditioned
                                 : SdpStatus::marginal;
  sol.note = "no solution met the invariants and no refutation was verified";
  return sol;
}

}  // namespace freecert
