#pragma once

#include <optional>
#include <string>
#include <vector>

#include "freecert/config.hpp"
#include "freecert/domain.hpp"
#include "freecert/pencil.hpp"
#include "freecert/poly.hpp"
#include "freecert/rng.hpp"
#include "freecert/sdp.hpp"

namespace freecert {

// ---- LMI domination ---------------------------------------------------------

/// Unital completely positive map certifying that every solution of
/// L1(X) > 0 satisfies L2(X) > 0, in Kraus form: sum_i V_i^* V_i = I and
/// sum_i V_i^* A_j^{(1)} V_i = A_j^{(2)}.
struct KrausCertificate {
  std::vector<Mat> v;      ///< d1 x d2 each
  Mat choi;                ///< the PSD Choi block the map was recovered from
  double residual = 0.0;   ///< max coefficient-identity defect
  double truncation = 0.0; ///< largest eigenvalue dropped during recovery
};

/// A point in D_{L1} with L2(X) not positive semidefinite.
struct DominationWitness {
  MatrixTuple x;
  double margin_in = 0.0;   ///< lambda_min L1(X)
  double margin_out = 0.0;  ///< lambda_min L2(X), expected negative
};

struct DominationReport {
  SdpStatus status = SdpStatus::marginal;
  std::optional<KrausCertificate> cert;
  std::optional<FarkasCertificate> farkas;
  std::optional<DominationWitness> witness;
  /// SDP infeasibility refutes domination only over a bounded D_{L1};
  /// false when the boundedness probe reported evidence of unboundedness.
  bool refutation_conclusive = false;
  double lambda_star = 0.0;
  int sdp_iterations = 0;
  std::string note;
};

/// Builds and solves the Choi-matrix feasibility problem for the unital CP
/// map.  Both pencils must share the same form (monic, or hermitian) and
/// arity.  On infeasibility, searches for a point witness and probes
/// boundedness of D_{L1} to qualify the refutation.
DominationReport lmi_dominate(const LinearPencil& l1, const LinearPencil& l2,
                              const RunConfig& cfg = {});

/// Residuals of a proposed Kraus certificate against the two pencils.
struct DominationCheck {
  bool valid = false;
  double unital_residual = 0.0;
  double coeff_residual = 0.0;
};
DominationCheck verify_domination(const LinearPencil& l1,
                                  const LinearPencil& l2,
                                  const std::vector<Mat>& kraus,
                                  double tol = 1e-6);

/// Checks a claimed witness: inside D_{L1} by margin, outside D_{L2}.
bool verify_domination_witness(const LinearPencil& l1, const LinearPencil& l2,
                               const MatrixTuple& x, double tol = 1e-9);

/// Samples members of D_{L1} and confirms L2 stays PSD there; returns the
/// most negative L2 margin seen (a violation is a found witness).
struct PointwiseProbe {
  int trials = 0;
  double worst_margin = 0.0;
  std::optional<DominationWitness> violation;
};
PointwiseProbe check_domination_pointwise(const LinearPencil& l1,
                                          const LinearPencil& l2, Rng& rng,
                                          int trials = 200, int max_size = 3);

// ---- convex Positivstellensatz ---------------------------------------------

/// Certificate that a symmetric scalar polynomial p is nonnegative where
/// L > 0:  p = sum_i s_i^* s_i + sum_k f_k^* L f_k, with s_i scalar
/// polynomials and f_k column-vector polynomials, all in plain (unstarred)
/// words of length <= degree_cap.
struct PsatzCertificate {
  int degree_cap = 0;
  std::vector<FreePoly> s;               ///< 1x1
  std::vector<std::vector<FreePoly>> f;  ///< each entry: d_L scalar polys
  Mat gram_s;                            ///< PSD Gram blocks the parts came from
  Mat gram_f;
  double truncation = 0.0;
};

struct PsatzWitness {
  MatrixTuple x;
  double domain_margin = 0.0;  ///< lambda_min L(X)
  double value_margin = 0.0;   ///< lambda_min p(X), expected negative
};

struct PsatzReport {
  SdpStatus status = SdpStatus::marginal;
  int degree_cap = 0;
  std::optional<PsatzCertificate> cert;
  std::optional<FarkasCertificate> farkas;
  std::optional<PsatzWitness> witness;
  double lambda_star = 0.0;
  int sdp_iterations = 0;
  std::string note;
};

/// p must be a symmetric scalar polynomial in plain words; L monic or
/// hermitian (the latter is folded to symmetric variables).  degree_cap
/// defaults to ceil(deg p / 2); pass `cap` to override (smaller caps make the
/// problem infeasible and are how truncation behaviour is exercised).
PsatzReport psatz(const FreePoly& p, const LinearPencil& l,
                  const RunConfig& cfg = {}, std::optional<int> cap = {});

/// Symbolic re-expansion of a certificate; residual is the largest
/// coefficient-wise defect of p - (sum s^*s + sum f^*Lf).
struct PsatzCheck {
  bool valid = false;
  double residual = 0.0;
  /// Defect polynomial, for reporting which words fail.
  FreePoly defect;
};
PsatzCheck verify_psatz(const FreePoly& p, const LinearPencil& l,
                        const PsatzCertificate& cert, double tol = 1e-6);

bool verify_psatz_witness(const FreePoly& p, const LinearPencil& l,
                          const MatrixTuple& x, double tol = 1e-9);

// ---- unitary equivalence ----------------------------------------------------

enum class EquivVerdict { equivalent, not_equivalent, inconclusive };

const char* equiv_verdict_name(EquivVerdict v);

struct EquivReport {
  EquivVerdict verdict = EquivVerdict::inconclusive;
  std::optional<Mat> u;
  double residual = 0.0;             ///< max ||U A_j U^* - B_j|| over j (scaled)
  double trace_gap = 0.0;            ///< largest trace-invariant mismatch
  int intertwiner_dim = 0;
  std::string note;
};

/// Heuristic simultaneous unitary equivalence U A_j^{(1)} U^* = A_j^{(2)} of
/// two pencils' coefficient tuples.  Trace invariants of *-words give a fast
/// definitive negative (as does an empty intertwiner space); otherwise the
/// space {X : X A_j^{(1)} = A_j^{(2)} X} is computed exactly and searched for
/// a unitary by polar-factor iteration from seeded random starts.  A failed
/// search over a nonzero space stays `inconclusive`.
EquivReport unitary_equiv_check(const LinearPencil& l1, const LinearPencil& l2,
                                const RunConfig& cfg = {});

}  // namespace freecert
