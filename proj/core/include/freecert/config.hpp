#pragma once

#include <cstdint>
#include <map>
#include <string>

namespace freecert {

/// Pinned numeric tolerances. Every check that classifies (member/boundary,
/// pass/fail, feasible/infeasible) reads its threshold from here so that a
/// report can state exactly which values were in force.
struct Tolerances {
  double domain_boundary = 1e-9;    ///< scale-aware band for member/boundary calls
  double unitarity = 1e-10;         ///< ||U*U - I|| bound for conjugation inputs
  double checker_pass = 1e-8;       ///< free-map axiom residual bound (scale-aware)
  double dilation = 1e-9;           ///< dilation identity residuals
  double sdp_feas_margin = 1e-7;    ///< strict-feasibility band for SDP verdicts
  double sdp_eig_floor = 1e-8;      ///< allowed negative eigenvalue on returned PSD vars
  double sdp_constraint = 1e-7;     ///< constraint residual bound, times (1+||b||)
  double cert_residual = 1e-6;      ///< symbolic certificate verification bound
  double kraus_truncation = 1e-9;   ///< eigenvalue cutoff for factor extraction
};

struct Caps {
  long max_fock_dim = 100000;   ///< refuse truncated-algebra bases larger than this
  int max_sdp_dim = 400;        ///< total PSD dimension cap for the solver
  int max_matrix_size = 256;    ///< sanity cap for tuple sizes accepted from files
};

struct RunConfig {
  std::uint64_t seed = 12345;
  Tolerances tol;
  Caps caps;

  /// Applies the FREECERT_SEED environment variable, which takes precedence
  /// over any configured seed.  Returns the effective seed.
  std::uint64_t effective_seed() const;
};

}  // namespace freecert
