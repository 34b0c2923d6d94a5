#pragma once

// Recursive-descent parser for univariate polynomial expressions in x:
//   expr   := term (('+'|'-') term)*
//   term   := factor ('*' factor | factor)*      (adjacency multiplies)
//   factor := base ('^' uint)?
//   base   := number | 'x' | '(' expr ')' | '-' factor
// Numbers are integers, fractions "a/b" or decimals "1.25".

#include <cctype>
#include <cstddef>
#include <string>
#include <string_view>

#include "sosq/errors.hpp"
#include "sosq/poly.hpp"
#include "sosq/rational.hpp"

namespace sosq {

inline constexpr unsigned long kMaxExponent = 10000;
inline constexpr long kMaxParsedDegree = 100000;

namespace detail {

class PolyParser {
 public:
  explicit PolyParser(std::string_view text) : s_(text) {}

  Poly parse() {
    skip();
    if (at_end()) fail("expression");
    Poly p = expr();
    skip();
    if (!at_end()) fail("operator or end of input");
    return p;
  }

 private:
  [[noreturn]] void fail(const std::string& expected) const {
    std::string found = at_end() ? "end of input" : "'" + std::string(1, s_[i_]) + "'";
    throw ParseError(1, i_, "at position " + std::to_string(i_) + ": expected " + expected + ", found " + found);
  }

  bool at_end() const { return i_ >= s_.size(); }
  char peek() const { return at_end() ? '\0' : s_[i_]; }
  void skip() {
    while (!at_end() && std::isspace(static_cast<unsigned char>(s_[i_]))) ++i_;
  }

  void check_degree(const Poly& p) const {
    if (p.degree() > Degree(kMaxParsedDegree))
      throw ParseError(1, i_, "at position " + std::to_string(i_) + ": degree exceeds " +
                                  std::to_string(kMaxParsedDegree));
  }

  Poly expr() {
    Poly acc = term();
    for (;;) {
      skip();
      const char c = peek();
      if (c != '+' && c != '-') return acc;
      ++i_;
      Poly t = term();
      if (c == '+') acc += t;
      else acc -= t;
    }
  }

  bool starts_base() {
    skip();
    const char c = peek();
    return std::isdigit(static_cast<unsigned char>(c)) || c == '.' || c == 'x' || c == '(';
  }

  Poly term() {
    Poly acc = factor();
    for (;;) {
      skip();
      if (peek() == '*') {
        ++i_;
        acc = acc * factor();
      } else if (starts_base()) {
        acc = acc * factor();
      } else {
        return acc;
      }
      check_degree(acc);
    }
  }

  Poly factor() {
    Poly b = base();
    skip();
    if (peek() != '^') return b;
    ++i_;
    skip();
    const std::size_t start = i_;
    while (std::isdigit(static_cast<unsigned char>(peek()))) ++i_;
    if (start == i_) fail("non-negative integer exponent");
    if (peek() == '.') fail("integer exponent");
    const std::string digits(s_.substr(start, i_ - start));
    if (digits.size() > 6 || std::stoul(digits) > kMaxExponent) {
      i_ = start;
      fail("exponent <= " + std::to_string(kMaxExponent));
    }
    const unsigned long e = std::stoul(digits);
    if (!b.is_zero() && !b.is_constant() && b.degree().value() * static_cast<long>(e) > kMaxParsedDegree) {
      i_ = start;
      fail("smaller exponent (degree exceeds " + std::to_string(kMaxParsedDegree) + ")");
    }
    return pow(b, e);
  }

  Poly base() {
    skip();
    const char c = peek();
    if (c == '-') {
      ++i_;
      return -factor();
    }
    if (c == 'x') {
      ++i_;
      return Poly::x();
    }
    if (c == '(') {
      ++i_;
      skip();
      Poly p = expr();
      skip();
      if (peek() != ')') fail("')'");
      ++i_;
      return p;
    }
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') return Poly::constant(number());
    fail("number, 'x', '(' or '-'");
  }

  Rational number() {
    const std::size_t start = i_;
    auto digits = [this] {
      const std::size_t b = i_;
      while (std::isdigit(static_cast<unsigned char>(peek()))) ++i_;
      return std::string(s_.substr(b, i_ - b));
    };
    std::string whole = digits();
    if (peek() == '.') {
      ++i_;
      std::string frac = digits();
      if (whole.empty() && frac.empty()) {
        i_ = start;
        fail("number");
      }
      Integer num(whole.empty() ? "0" : whole, 10);
      Integer scale = pow_int(10, frac.size());
      if (!frac.empty()) num = num * scale + Integer(frac, 10);
      return make_rational(num, scale);
    }
    if (peek() == '/') {
      const std::size_t slash = i_;
      ++i_;
      std::string den = digits();
      if (den.empty()) fail("denominator digits");
      if (Integer(den, 10) == 0) {
        i_ = slash + 1;
        fail("non-zero denominator");
      }
      return make_rational(Integer(whole, 10), Integer(den, 10));
    }
    return Rational(Integer(whole, 10));
  }

  std::string_view s_;
  std::size_t i_ = 0;
};

}  // namespace detail

/// Parses an expression in x into an exact polynomial; throws ParseError
/// carrying the 0-based character position and what was expected there.
inline Poly parse_poly(std::string_view text) { return detail::PolyParser(text).parse(); }

}  // namespace sosq
