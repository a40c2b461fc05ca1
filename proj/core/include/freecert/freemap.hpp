#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "freecert/domain.hpp"
#include "freecert/poly.hpp"
#include "freecert/rng.hpp"
#include "freecert/tuple.hpp"

namespace freecert {

/// A black-box levelwise map: a g-tuple of size n goes to a gt-tuple of the
/// same size, for every n.  `domain` (when present) restricts admissible
/// inputs; evaluation outside it is the evaluator's own business and may
/// throw.
struct FreeMapHandle {
  int in_vars = 0;
  int out_vars = 0;
  std::optional<Domain> domain;
  std::function<MatrixTuple(const MatrixTuple&)> eval;
  std::string name;

  MatrixTuple operator()(const MatrixTuple& x) const;
};

FreeMapHandle identity_map(int num_vars);

/// Map given by componentwise scalar polynomials (defined everywhere).
FreeMapHandle poly_map(std::vector<FreePoly> components);

/// The one-variable family f_theta(X) = e^{i theta} X (I + X - e^{i theta} X)^{-1}
/// on the LMI domain of shifted_disc_pencil().  Fixes 0, has derivative
/// e^{i theta} at 0, maps the domain to itself, and composes additively in
/// theta.  Evaluation throws when the resolvent condition number exceeds
/// `cond_cap`.
FreeMapHandle ftheta(double theta, double cond_cap = 1e12);

struct CheckReport {
  std::string check;
  int samples = 0;
  int rejected = 0;         ///< draws discarded (e.g. transported point left the domain)
  double max_residual = 0.0;
  double tolerance = 0.0;   ///< effective (scale-aware) bound applied
  bool pass = true;
  std::string note;
};

/// Residuals of f(X (+) Y) = f(X) (+) f(Y) on random members.
CheckReport check_direct_sums(const FreeMapHandle& f, int trials,
                              const std::vector<int>& sizes, Rng& rng,
                              double tol_base = 1e-8);

/// Residuals of the intertwining axiom: for square Gamma with bounded
/// condition number, X Gamma = Gamma Y forces f(X) Gamma = Gamma f(Y); also
/// exercises rectangular inclusions C^n -> C^{n+m} via direct sums.
CheckReport check_intertwining(const FreeMapHandle& f, int trials,
                               const std::vector<int>& sizes, Rng& rng,
                               double tol_base = 1e-8,
                               double cond_bound = 4.0);

/// The derivative f'(X)[H], read off the (1,2) corner of f applied to the
/// 2x2 block tuple [[X, tH],[0, X]] and rescaled by 1/t.  t starts at 1 and
/// halves until the block point is a domain member; throws when none of the
/// 60 attempts lands inside.
MatrixTuple block_derivative(const FreeMapHandle& f, const MatrixTuple& x,
                             const MatrixTuple& h);

struct PropernessReport {
  int boundary_samples = 0;
  double min_image_margin = 0.0;     ///< codomain margin closest to the edge
  double max_image_margin = 0.0;
  int pair_samples = 0;
  int injectivity_violations = 0;    ///< distinct inputs collapsing to one output
  std::string note;
};

/// Heuristic properness probe: feeds near-boundary members (domain margin
/// below boundary_band) through f and reports how close the images sit to the
/// codomain boundary; additionally spot-checks injectivity on interior pairs.
PropernessReport properness_probe(const FreeMapHandle& f,
                                  const Domain& codomain,
                                  double boundary_band, int trials, Rng& rng,
                                  const std::vector<int>& sizes = {1, 2, 3});

/// max ||f(e^{i t} X) - e^{i t} f(X)|| over random members and phases;
/// near zero exactly for maps with f(0) = 0 and only degree-one terms.
CheckReport rotation_equivariance_residual(const FreeMapHandle& f, int trials,
                                           const std::vector<int>& sizes,
                                           Rng& rng);

}  // namespace freecert
