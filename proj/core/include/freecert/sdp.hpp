#pragma once

#include <optional>
#include <string>
#include <vector>

#include "freecert/linalg.hpp"

namespace freecert {

/// A block-diagonal semidefinite problem over complex Hermitian blocks:
/// find (or optimize over) Z = diag(Z_1..Z_B) >= 0 with
/// sum_i Re tr(A_k^{(i)} Z_i) = b_k.  Internally each genuinely complex block
/// is passed through the real symmetric embedding M -> [[Re M, -Im M],
/// [Im M, Re M]], so one real-arithmetic kernel serves both cases.
struct SdpConstraint {
  /// One Hermitian matrix per block; an empty (0x0) entry means zero.
  std::vector<Mat> data;
  double rhs = 0.0;
};

struct SdpProblem {
  std::vector<int> block_dims;
  std::vector<SdpConstraint> constraints;
  /// min sum_i Re tr(C_i Z_i) when present; pure feasibility otherwise.
  std::optional<std::vector<Mat>> objective;

  int num_blocks() const { return static_cast<int>(block_dims.size()); }
  int num_constraints() const { return static_cast<int>(constraints.size()); }
  int total_dim() const;
  /// Shape/Hermiticity validation plus the total-dimension cap.
  void validate(int dim_cap = 400) const;
  /// sum_i Re tr(A_k^{(i)} Z_i) for candidate blocks Z.
  double constraint_value(int k, const std::vector<Mat>& z) const;
};

enum class SdpStatus {
  feasible,
  infeasible,
  marginal,
  max_iterations,
  ill_conditioned,
};

const char* sdp_status_name(SdpStatus s);

/// Farkas-type refutation: y with sum_k y_k A_k <= -delta I blockwise and
/// b.y >= 0 rules out any PSD solution of the equalities.
struct FarkasCertificate {
  Eigen::VectorXd y;
  double delta = 0.0;    ///< -max_i lambda_max(sum_k y_k A_k^{(i)})
  double b_dot_y = 0.0;
};

struct FarkasCheck {
  bool valid = false;
  double lambda_max = 0.0;  ///< of sum y_k A_k, most positive over blocks
  double b_dot_y = 0.0;
  std::string reason;
};

/// Recomputes the certificate inequalities from scratch.
FarkasCheck check_farkas(const SdpProblem& p, const FarkasCertificate& c,
                         double tol = 1e-9);

struct SdpSolveOptions {
  int max_iter = 250;
  double tol = 1e-9;             ///< relative residual/gap target of the kernel
  double feas_margin = 1e-7;     ///< strict feasibility band on lambda_star
  double eig_floor = 1e-8;       ///< permitted negative eigenvalue on returned Z
  double constraint_tol = 1e-7;  ///< residual bound, scaled by (1 + ||b||_inf)
  int dim_cap = 400;
  bool verbose = false;
};

struct SdpSolution {
  SdpStatus status = SdpStatus::ill_conditioned;
  std::vector<Mat> z;             ///< per block (primal variable)
  double lambda_star = 0.0;       ///< optimum of the min-eigenvalue slack program
  double constraint_residual = 0.0;
  double min_eigenvalue = 0.0;
  bool strictly_feasible = false; ///< lambda_star cleared the feas_margin band
  std::optional<FarkasCertificate> farkas;
  /// Optimization path extras (objective present):
  Eigen::VectorXd dual_y;
  double primal_objective = 0.0;
  double dual_objective = 0.0;
  double rel_gap = 0.0;
  int iterations = 0;
  std::string note;
};

/// Main entry.  Without an objective this runs the feasibility pipeline:
/// (1) maximize the minimum-eigenvalue slack lambda over Z - lambda I >= 0
///     under the equalities (lambda capped at 1);
/// (2) accept `feasible` when the recovered Z satisfies the residual and
///     eigenvalue-floor invariants — lambda_star > feas_margin marks it
///     strictly feasible, the band [-feas_margin, feas_margin] is a boundary
///     solve that is still accepted when the invariants hold;
/// (3) otherwise search for a Farkas refutation with a second solve and
///     post-check it; `infeasible` only with a checked certificate;
/// (4) anything else degrades to `marginal` / `ill_conditioned`.
/// With an objective, runs the interior-point kernel directly and reports
/// objective values (status `feasible` = converged).
SdpSolution solve(const SdpProblem& p, const SdpSolveOptions& opts = {});

}  // namespace freecert
