#pragma once

#include <vector>

#include "freecert/tuple.hpp"
#include "freecert/word.hpp"

namespace freecert {

/// The span of plain words of length <= max_len in g letters, with the
/// graded-lex word basis (the empty word is index 0).  Hosts the compressed
/// creation operators and right-multiplication operators.
class TruncatedFock {
 public:
  TruncatedFock(int letters, int max_len, long dim_cap = 100000);

  /// Closed form sum_{j<=max_len} letters^j.
  static long dimension(int letters, int max_len);

  int letters() const { return letters_; }
  int max_len() const { return max_len_; }
  int dim() const { return static_cast<int>(basis_.size()); }

  const Word& word_at(int i) const { return basis_.at(i); }
  const std::vector<Word>& basis() const { return basis_; }
  /// Index of a plain word of length <= max_len; throws otherwise.
  int index_of(const Word& w) const;

  /// The tuple T with T_j e_w = e_{x_j w} for |w| < max_len, 0 on the top
  /// layer.  Satisfies sum_j T_j T_j* = I - e_0 e_0* exactly, and
  /// T^w e_0 = e_w for every basis word.
  MatrixTuple creation_ops() const;

  /// R_u e_v = e_{v u} when |v| + |u| <= max_len, 0 otherwise.  Commutes with
  /// every creation operator exactly.
  Mat right_mult(const Word& u) const;

 private:
  int letters_;
  int max_len_;
  std::vector<Word> basis_;
  std::vector<long> layer_offset_;  ///< index of the first word of each length
};

struct DilationResult {
  Mat isometry;                  ///< V : C^n -> C^n (x) span, (n*dim) x n
  Mat defect;                    ///< D = (I - sum (X_j/r)(X_j/r)*)^{1/2}
  double scale = 0.0;            ///< the radius r
  double isometry_residual = 0.0;      ///< ||V*V - I||
  double intertwine_residual = 0.0;    ///< max_j ||V X_j* - r (I (x) T_j*) V||
  double completeness_residual = 0.0;  ///< ||sum_w Y^w D^2 (Y^w)* - I||, Y = X/r
};

/// For a jointly nilpotent tuple (X^w = 0 whenever |w| > max_len) with
/// sum X_j X_j* < r^2 I, builds the isometry V with V*V = I and
/// V X_j* = r (I (x) T_j*) V, exhibiting X as r times a corner of the
/// creation tuple.  Nilpotency and the radius bound are validated.
DilationResult dilate(const MatrixTuple& x, double r, int max_len,
                      long dim_cap = 100000);

}  // namespace freecert
