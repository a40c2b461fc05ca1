#include "freecert/poly_text.hpp"

#include <cctype>
#include <cstdlib>
#include <stdexcept>

namespace freecert {

namespace {

class Parser {
 public:
  Parser(const std::string& text, int num_vars)
      : text_(text), g_(num_vars) {}

  FreePoly run() {
    if (g_ == 0) g_ = std::max(1, scan_max_index());
    FreePoly p = expr();
    skip_ws();
    if (pos_ != text_.size()) die("trailing input");
    return p;
  }

 private:
  [[noreturn]] void die(const std::string& what) const {
    throw std::invalid_argument("parse error at position " +
                                std::to_string(pos_) + ": " + what);
  }

  void skip_ws() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(
                                      text_[pos_])))
      ++pos_;
  }

  char peek() {
    skip_ws();
    return pos_ < text_.size() ? text_[pos_] : '\0';
  }

  bool starts_factor(char c) const {
    return std::isdigit(static_cast<unsigned char>(c)) || c == '.' ||
           c == 'x' || c == 'i' || c == '(';
  }

  int scan_max_index() const {
    int m = 0;
    for (size_t i = 0; i < text_.size(); ++i)
      if (text_[i] == 'x') {
        size_t j = i + 1;
        int idx = 0;
        while (j < text_.size() &&
               std::isdigit(static_cast<unsigned char>(text_[j])))
          idx = idx * 10 + (text_[j++] - '0');
        m = std::max(m, idx == 0 ? 1 : idx);
      }
    return m;
  }

  FreePoly expr() {
    bool negate = false;
    char c = peek();
    if (c == '+' || c == '-') {
      negate = c == '-';
      ++pos_;
    }
    FreePoly p = term();
    if (negate) p = p.scaled(-1.0);
    while (true) {
      c = peek();
      if (c == '+' || c == '-') {
        ++pos_;
        FreePoly t = term();
        p = (c == '+') ? p + t : p - t;
      } else {
        return p;
      }
    }
  }

  FreePoly term() {
    FreePoly p = factor();
    while (true) {
      char c = peek();
      if (c == '*') {
        ++pos_;
        p = p * factor();
      } else if (starts_factor(c)) {
        p = p * factor();
      } else {
        return p;
      }
    }
  }

  FreePoly factor() {
    FreePoly p = atom();
    if (peek() == '^') {
      ++pos_;
      char c = peek();
      if (!std::isdigit(static_cast<unsigned char>(c))) die("expected exponent");
      int e = 0;
      while (pos_ < text_.size() &&
             std::isdigit(static_cast<unsigned char>(text_[pos_])))
        e = e * 10 + (text_[pos_++] - '0');
      FreePoly out = FreePoly::constant(g_, Complex(1.0));
      for (int k = 0; k < e; ++k) out = out * p;
      return out;
    }
    return p;
  }

  FreePoly atom() {
    char c = peek();
    if (c == '(') {
      ++pos_;
      FreePoly p = expr();
      if (peek() != ')') die("expected ')'");
      ++pos_;
      return p;
    }
    if (c == 'x') {
      ++pos_;
      int idx = 0;
      bool indexed = false;
      while (pos_ < text_.size() &&
             std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
        idx = idx * 10 + (text_[pos_++] - '0');
        indexed = true;
      }
      if (!indexed) idx = 1;  // bare "x" names the first variable
      if (idx == 0) die("variable indices start at x1");
      if (idx > g_) die("variable x" + std::to_string(idx) + " exceeds arity " +
                        std::to_string(g_));
      bool star = false;
      if (pos_ < text_.size() && text_[pos_] == '\'') {
        star = true;
        ++pos_;
      }
      return FreePoly::variable(idx, g_, star);
    }
    if (c == 'i') {
      ++pos_;
      return FreePoly::constant(g_, Complex(0.0, 1.0));
    }
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') {
      const char* start = text_.c_str() + pos_;
      char* end = nullptr;
      double v = std::strtod(start, &end);
      if (end == start) die("expected number");
      pos_ += static_cast<size_t>(end - start);
      if (pos_ < text_.size() && text_[pos_] == 'i') {
        ++pos_;
        return FreePoly::constant(g_, Complex(0.0, v));
      }
      return FreePoly::constant(g_, Complex(v, 0.0));
    }
    die("expected a number, variable, or '('");
  }

  const std::string& text_;
  int g_ = 0;
  size_t pos_ = 0;
};

}  // namespace

FreePoly parse_poly(const std::string& text, int num_vars) {
  Parser p(text, num_vars);
  return p.run();
}

}  // namespace freecert
