#include "freecert/freemap.hpp"

#include <cmath>
#include <stdexcept>

namespace freecert {

namespace {

MatrixTuple sample_or_throw(const FreeMapHandle& f, int n, Rng& rng) {
  if (!f.domain) {
    // Unrestricted maps: modest Gaussian data keeps scales tame.
    std::vector<Mat> mats;
    for (int j = 0; j < f.in_vars; ++j)
      mats.push_back(rng.gaussian(n, n) * (0.5 / std::sqrt(static_cast<double>(n))));
    return MatrixTuple(std::move(mats));
  }
  auto x = sample_member(*f.domain, n, rng);
  if (!x)
    throw std::runtime_error("free-map check: could not sample a domain member");
  return *x;
}

bool in_domain(const FreeMapHandle& f, const MatrixTuple& x) {
  if (!f.domain) return true;
  return contains(*f.domain, x).is_member();
}

double tuple_gap(const MatrixTuple& a, const MatrixTuple& b) {
  double r = 0.0;
  for (int j = 0; j < a.arity(); ++j) r = std::max(r, (a[j] - b[j]).norm());
  return r;
}

}  // namespace

MatrixTuple FreeMapHandle::operator()(const MatrixTuple& x) const {
  if (x.arity() != in_vars)
    throw std::invalid_argument("FreeMapHandle: arity mismatch");
  MatrixTuple y = eval(x);
  if (y.arity() != out_vars || y.dim() != x.dim())
    throw std::runtime_error("FreeMapHandle: evaluator returned wrong shape");
  return y;
}

FreeMapHandle identity_map(int num_vars) {
  FreeMapHandle f;
  f.in_vars = f.out_vars = num_vars;
  f.eval = [](const MatrixTuple& x) { return x; };
  f.name = "identity";
  return f;
}

FreeMapHandle poly_map(std::vector<FreePoly> components) {
  if (components.empty())
    throw std::invalid_argument("poly_map: needs at least one component");
  int g = components[0].num_vars();
  for (const auto& p : components) {
    if (!p.is_scalar())
      throw std::invalid_argument("poly_map: components must be scalar");
    if (p.num_vars() != g)
      throw std::invalid_argument("poly_map: components disagree on num_vars");
  }
  FreeMapHandle f;
  f.in_vars = g;
  f.out_vars = static_cast<int>(components.size());
  f.eval = [comps = std::move(components)](const MatrixTuple& x) {
    return eval_poly_tuple(comps, x);
  };
  f.name = "poly";
  return f;
}

FreeMapHandle ftheta(double theta, double cond_cap) {
  FreeMapHandle f;
  f.in_vars = f.out_vars = 1;
  f.domain = Domain{LmiDomain{shifted_disc_pencil()}};
  f.name = "ftheta:" + std::to_string(theta);
  Complex phase = std::exp(Complex(0.0, theta));
  f.eval = [phase, cond_cap](const MatrixTuple& x) {
    const Mat& m = x[0];
    const int n = x.dim();
    Mat resolvent = Mat::Identity(n, n) + m - phase * m;
    if (condition_number(resolvent) > cond_cap)
      throw std::runtime_error(
          "ftheta: resolvent is numerically singular at this point");
    Mat value = phase * m * resolvent.inverse();
    return MatrixTuple({value});
  };
  return f;
}

CheckReport check_direct_sums(const FreeMapHandle& f, int trials,
                              const std::vector<int>& sizes, Rng& rng,
                              double tol_base) {
  CheckReport rep;
  rep.check = "direct-sums";
  for (int t = 0; t < trials; ++t) {
    int n1 = sizes[rng.uniform_int(0, static_cast<int>(sizes.size()) - 1)];
    int n2 = sizes[rng.uniform_int(0, static_cast<int>(sizes.size()) - 1)];
    MatrixTuple x = sample_or_throw(f, n1, rng);
    MatrixTuple y = sample_or_throw(f, n2, rng);
    MatrixTuple joint = f(direct_sum(x, y));
    MatrixTuple split = direct_sum(f(x), f(y));
    double res = tuple_gap(joint, split);
    double scale = 1.0 + x.norm() + y.norm() + split.norm();
    rep.max_residual = std::max(rep.max_residual, res);
    rep.tolerance = std::max(rep.tolerance, tol_base * scale);
    if (res > tol_base * scale) {
      rep.pass = false;
      rep.note = "direct-sum axiom violated at sizes " + std::to_string(n1) +
                 "+" + std::to_string(n2);
    }
    ++rep.samples;
  }
  return rep;
}

CheckReport check_intertwining(const FreeMapHandle& f, int trials,
                               const std::vector<int>& sizes, Rng& rng,
                               double tol_base, double cond_bound) {
  CheckReport rep;
  rep.check = "intertwining";
  int attempts_left = trials * 12;
  while (rep.samples < trials && attempts_left-- > 0) {
    int n = sizes[rng.uniform_int(0, static_cast<int>(sizes.size()) - 1)];
    MatrixTuple x = sample_or_throw(f, n, rng);

    // Square similarity: Y = G^{-1} X G must land back in the domain.
    Mat gamma = rng.well_conditioned(n, cond_bound);
    Mat ginv = gamma.inverse();
    std::vector<Mat> ym;
    for (int j = 0; j < f.in_vars; ++j) ym.push_back(ginv * x[j] * gamma);
    MatrixTuple y(std::move(ym));
    if (!in_domain(f, y)) {
      ++rep.rejected;
      continue;
    }
    MatrixTuple fx = f(x), fy = f(y);
    double res = 0.0;
    for (int j = 0; j < f.out_vars; ++j)
      res = std::max(res, (fx[j] * gamma - gamma * fy[j]).norm());

    // Rectangular inclusion: with Xt = X (+) Z and E the inclusion of C^n,
    // Xt E = E X, so f(Xt) E = E f(X) is forced.
    int m = sizes[rng.uniform_int(0, static_cast<int>(sizes.size()) - 1)];
    MatrixTuple z = sample_or_throw(f, m, rng);
    MatrixTuple xt = direct_sum(x, z);
    if (in_domain(f, xt)) {
      Mat incl = Mat::Zero(n + m, n);
      incl.topRows(n) = Mat::Identity(n, n);
      MatrixTuple fxt = f(xt);
      for (int j = 0; j < f.out_vars; ++j)
        res = std::max(res, (fxt[j] * incl - incl * fx[j]).norm());
    }

    double scale = 1.0 + x.norm() + fx.norm() + operator_norm(gamma) +
                   operator_norm(ginv);
    rep.max_residual = std::max(rep.max_residual, res);
    rep.tolerance = std::max(rep.tolerance, tol_base * scale);
    if (res > tol_base * scale) {
      rep.pass = false;
      rep.note = "intertwining axiom violated at size " + std::to_string(n);
    }
    ++rep.samples;
  }
  if (rep.samples < trials) {
    rep.pass = false;
    rep.note = "could not transport enough samples inside the domain";
  }
  return rep;
}

MatrixTuple block_derivative(const FreeMapHandle& f, const MatrixTuple& x,
                             const MatrixTuple& h) {
  if (x.arity() != f.in_vars || h.arity() != f.in_vars || x.dim() != h.dim())
    throw std::invalid_argument("block_derivative: shape mismatch");
  const int n = x.dim();
  double t = 1.0;
  for (int attempt = 0; attempt < 60; ++attempt, t *= 0.5) {
    std::vector<Mat> blocks;
    for (int j = 0; j < f.in_vars; ++j) {
      Mat b = Mat::Zero(2 * n, 2 * n);
      b.topLeftCorner(n, n) = x[j];
      b.bottomRightCorner(n, n) = x[j];
      b.topRightCorner(n, n) = t * h[j];
      blocks.push_back(std::move(b));
    }
    MatrixTuple big(std::move(blocks));
    if (!in_domain(f, big)) continue;
    MatrixTuple fb = f(big);
    std::vector<Mat> out;
    for (int j = 0; j < f.out_vars; ++j)
      out.push_back(fb[j].topRightCorner(n, n) / t);
    return MatrixTuple(std::move(out));
  }
  throw std::runtime_error(
      "block_derivative: no scaled block point landed inside the domain");
}

PropernessReport properness_probe(const FreeMapHandle& f,
                                  const Domain& codomain,
                                  double boundary_band, int trials, Rng& rng,
                                  const std::vector<int>& sizes) {
  if (!f.domain)
    throw std::invalid_argument("properness_probe: map has no declared domain");
  PropernessReport rep;
  rep.min_image_margin = std::numeric_limits<double>::infinity();
  rep.max_image_margin = -std::numeric_limits<double>::infinity();
  for (int t = 0; t < trials; ++t) {
    int n = sizes[rng.uniform_int(0, static_cast<int>(sizes.size()) - 1)];
    auto x = sample_near_boundary(*f.domain, n, rng, boundary_band);
    if (!x) continue;
    MatrixTuple fx = f(*x);
    double m = contains(codomain, fx).margin;
    rep.min_image_margin = std::min(rep.min_image_margin, m);
    rep.max_image_margin = std::max(rep.max_image_margin, m);
    ++rep.boundary_samples;
  }
  if (rep.boundary_samples == 0) {
    rep.min_image_margin = rep.max_image_margin = 0.0;
    rep.note = "no near-boundary samples found (unbounded rays?)";
  }
  // Interior injectivity spot-check.
  for (int t = 0; t < trials; ++t) {
    int n = sizes[rng.uniform_int(0, static_cast<int>(sizes.size()) - 1)];
    MatrixTuple a = sample_or_throw(f, n, rng);
    MatrixTuple b = sample_or_throw(f, n, rng);
    if (tuple_gap(a, b) <= 1e-6) continue;
    ++rep.pair_samples;
    if (tuple_gap(f(a), f(b)) < 1e-10) ++rep.injectivity_violations;
  }
  return rep;
}

CheckReport rotation_equivariance_residual(const FreeMapHandle& f, int trials,
                                           const std::vector<int>& sizes,
                                           Rng& rng) {
  CheckReport rep;
  rep.check = "rotation-equivariance";
  int attempts_left = trials * 12;
  while (rep.samples < trials && attempts_left-- > 0) {
    int n = sizes[rng.uniform_int(0, static_cast<int>(sizes.size()) - 1)];
    MatrixTuple x = sample_or_throw(f, n, rng);
    Complex phase = std::exp(Complex(0.0, rng.uniform(0.0, 2.0 * M_PI)));
    MatrixTuple rx = x.scaled(phase);
    if (!in_domain(f, rx)) {
      ++rep.rejected;
      continue;
    }
    MatrixTuple lhs = f(rx);
    MatrixTuple rhs = f(x).scaled(phase);
    rep.max_residual = std::max(rep.max_residual, tuple_gap(lhs, rhs));
    ++rep.samples;
  }
  rep.pass = true;  // informational: the residual is the result
  return rep;
}

}  // namespace freecert
