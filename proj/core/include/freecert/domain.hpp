#pragma once

#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "freecert/pencil.hpp"
#include "freecert/poly.hpp"
#include "freecert/rng.hpp"
#include "freecert/tuple.hpp"

namespace freecert {

/// {X : sum_j X_j X_j* < eps^2 I}, the norm ball of radius eps.
struct EpsNeighborhood {
  int num_vars;
  double radius;
};

/// {X : L(X) > 0} for a hermitian-form or monic pencil.
struct LmiDomain {
  LinearPencil pencil;
};

/// The component of 0 of {X : I + p(X) + p(X)* > 0} for a square-coefficient
/// polynomial p with p(0) = 0.  Membership checks positivity along the
/// sampled segment from 0 to X.
struct SemialgDomain {
  FreePoly p;
  int segment_samples = 64;
};

using Domain = std::variant<EpsNeighborhood, LmiDomain, SemialgDomain>;

int domain_arity(const Domain& d);
std::string domain_kind(const Domain& d);

/// The Hermitian matrix whose positivity defines membership at X.
Mat defining_matrix(const Domain& d, const MatrixTuple& x);

struct Containment {
  enum class Verdict { member, boundary, non_member };
  Verdict verdict;
  double margin;        ///< smallest eigenvalue of the defining matrix at X
  double segment_min;   ///< min margin over the sampled segment (semialgebraic only)
  double tol;           ///< the classification band that was applied

  bool is_member() const { return verdict == Verdict::member; }
};

const char* verdict_name(Containment::Verdict v);

/// Membership with margin.  The boundary band is tol_base * (1 + ||X||);
/// |margin| inside the band gives a boundary verdict.  For semialgebraic
/// domains a positive endpoint margin can still be rejected when the sampled
/// segment from 0 dips to or below the band.
Containment contains(const Domain& d, const MatrixTuple& x,
                     double tol_base = 1e-9);

/// Gaussian tuples rescaled toward 0 until contained.  Hermitian entries are
/// drawn when `hermitian` is set (the natural choice for monic pencils).
/// Returns nullopt if no member is found within max_tries shrink steps.
std::optional<MatrixTuple> sample_member(const Domain& d, int n, Rng& rng,
                                         bool hermitian = false,
                                         int max_tries = 200);

/// Like sample_member but with margin below `band`: walks the found member
/// toward the boundary along its ray by bisection.  Empty when the ray never
/// leaves the domain (unbounded direction).
std::optional<MatrixTuple> sample_near_boundary(const Domain& d, int n,
                                                Rng& rng, double band,
                                                bool hermitian = false);

struct BoundednessReport {
  bool violated = false;
  int samples = 0;
  double worst_row_norm_sq = 0.0;   ///< largest lambda_max(sum X_j X_j*) seen
  std::optional<MatrixTuple> witness;
  double witness_margin = 0.0;      ///< domain margin of the witness
};

/// Hit-and-run sampling of members from 0; reports a member violating
/// sum_j X_j X_j* < C^2 I when one is found.  A no-violation result is
/// evidence only, never a certificate of boundedness.
BoundednessReport boundedness_probe(const Domain& d, double c_bound,
                                    int trials, Rng& rng, int max_dim = 3);

struct ClosureReport {
  int trials = 0;
  int failures = 0;
  double max_margin_drift = 0.0;  ///< worst |margin(U*XU) - margin(X)|
  double min_sum_margin = 0.0;    ///< smallest margin among tested direct sums
  std::string note;
};

/// Spot-checks closure under unitary conjugation and direct sums on random
/// members.
ClosureReport closure_properties_test(const Domain& d, int trials, Rng& rng,
                                      int max_dim = 3);

/// The 2x2 hermitian-form pencil with A = [[1,1],[0,0]], whose LMI domain is
/// exactly {X : ||X - I|| < sqrt(2)} at every matrix size.
LinearPencil shifted_disc_pencil();

struct DiscAgreementReport {
  int samples = 0;
  int disagreements = 0;
  double max_margin_gap = 0.0;  ///< reserved: margin of the worst disagreement
  std::optional<MatrixTuple> witness;
};

/// Compares pencil membership for shifted_disc_pencil() against the norm
/// characterization ||X - I|| < sqrt(2) on random tuples of size <= max_dim.
/// Samples falling inside the boundary band of either test are skipped.
DiscAgreementReport disc_pencil_agreement(int samples, Rng& rng,
                                          int max_dim = 4,
                                          double tol_base = 1e-9);

}  // namespace freecert
