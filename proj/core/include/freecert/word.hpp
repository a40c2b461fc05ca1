#pragma once

#include <algorithm>
#include <cstdlib>
#include <stdexcept>
#include <string>
#include <vector>

namespace freecert {

/// A word in the free *-monoid on letters x_1..x_g.  Letters are stored as
/// signed indices: +j is x_j, -j is the adjoint letter x_j*.  The empty word
/// is the identity.
class Word {
 public:
  Word() = default;
  explicit Word(std::vector<int> letters) : letters_(std::move(letters)) {
    for (int v : letters_)
      if (v == 0) throw std::invalid_argument("Word: letter index 0");
  }

  static Word empty() { return Word(); }
  static Word letter(int j, bool star = false) {
    if (j <= 0) throw std::invalid_argument("Word::letter: index must be >= 1");
    return Word({star ? -j : j});
  }

  std::size_t size() const { return letters_.size(); }
  bool is_empty() const { return letters_.empty(); }
  const std::vector<int>& letters() const { return letters_; }

  /// 1-based variable index of the k-th letter.
  int index(std::size_t k) const { return std::abs(letters_[k]); }
  bool starred(std::size_t k) const { return letters_[k] < 0; }

  int max_index() const {
    int m = 0;
    for (int v : letters_) m = std::max(m, std::abs(v));
    return m;
  }
  bool has_starred_letters() const {
    return std::any_of(letters_.begin(), letters_.end(),
                       [](int v) { return v < 0; });
  }

  Word concat(const Word& other) const {
    std::vector<int> out = letters_;
    out.insert(out.end(), other.letters_.begin(), other.letters_.end());
    return Word(std::move(out));
  }

  /// The *-monoid involution: reverse the word and star every letter.
  Word adjoint() const {
    std::vector<int> out(letters_.rbegin(), letters_.rend());
    for (int& v : out) v = -v;
    return Word(std::move(out));
  }

  /// Reversal without starring; this is the involution of the symmetric
  /// (self-adjoint variable) setting where each letter is its own adjoint.
  Word reversed() const {
    return Word(std::vector<int>(letters_.rbegin(), letters_.rend()));
  }

  bool operator==(const Word& o) const { return letters_ == o.letters_; }
  bool operator!=(const Word& o) const { return !(*this == o); }

  std::string str() const {
    if (letters_.empty()) return "1";
    std::string s;
    for (std::size_t k = 0; k < letters_.size(); ++k) {
      if (k) s += ".";
      s += "x" + std::to_string(index(k));
      if (starred(k)) s += "*";
    }
    return s;
  }

 private:
  std::vector<int> letters_;
};

/// Graded lexicographic order: shorter words first; equal lengths compare
/// letter by letter with x_j before x_j* and both before x_{j+1}.
struct GradedLexLess {
  static int letter_key(int v) {
    // x_j -> 2j, x_j* -> 2j+1: plain sorts before starred at the same index.
    return v > 0 ? 2 * v : -2 * v + 1;
  }
  bool operator()(const Word& a, const Word& b) const {
    if (a.size() != b.size()) return a.size() < b.size();
    for (std::size_t k = 0; k < a.size(); ++k) {
      int ka = letter_key(a.letters()[k]);
      int kb = letter_key(b.letters()[k]);
      if (ka != kb) return ka < kb;
    }
    return false;
  }
};

inline bool graded_lex_less(const Word& a, const Word& b) {
  return GradedLexLess{}(a, b);
}

}  // namespace freecert
