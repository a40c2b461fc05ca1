#pragma once

#include <iosfwd>
#include <string>

#include "freecert/sdp.hpp"

namespace freecert {

/// SDPA sparse-format bridge for cross-checking against external solvers.
///
/// The file encodes the real symmetric problem
///   min <F_0, Y>  s.t.  <F_k, Y> = c_k (k = 1..m),  Y >= 0,
/// mapped from SdpProblem as F_k = A_k, c = b, F_0 = objective (zero when the
/// problem is pure feasibility).  Genuinely complex blocks are written through
/// the same real embedding the solver uses, so a round trip is exact only for
/// real data; that restriction is checked by the reader being fed our own
/// writer's output in the tests.
void write_sdpa_sparse(const SdpProblem& p, std::ostream& os);
void write_sdpa_sparse_file(const SdpProblem& p, const std::string& path);

SdpProblem read_sdpa_sparse(std::istream& is);
SdpProblem read_sdpa_sparse_file(const std::string& path);

}  // namespace freecert
