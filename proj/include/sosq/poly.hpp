#pragma once

#include <algorithm>
#include <compare>
#include <cstddef>
#include <initializer_list>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "sosq/errors.hpp"
#include "sosq/rational.hpp"

namespace sosq {

/// Polynomial degree with an explicit minus-infinity for the zero polynomial.
class Degree {
 public:
  constexpr Degree(long value) : value_(value) {}  // NOLINT: implicit from integers

  static constexpr Degree minus_infinity() { return Degree(); }

  constexpr bool is_minus_infinity() const { return !value_.has_value(); }

  long value() const {
    if (!value_) throw Error(Errc::ZeroPolynomial, "degree of the zero polynomial has no integer value");
    return *value_;
  }

  friend constexpr bool operator==(const Degree&, const Degree&) = default;
  friend constexpr std::strong_ordering operator<=>(const Degree& a, const Degree& b) {
    if (!a.value_ || !b.value_) return a.value_.has_value() <=> b.value_.has_value();
    return *a.value_ <=> *b.value_;
  }

  friend constexpr Degree operator+(const Degree& a, const Degree& b) {
    if (!a.value_ || !b.value_) return minus_infinity();
    return Degree(*a.value_ + *b.value_);
  }

  friend std::ostream& operator<<(std::ostream& os, const Degree& d) {
    if (d.is_minus_infinity()) return os << "-inf";
    return os << *d.value_;
  }

 private:
  constexpr Degree() = default;
  std::optional<long> value_;
};

/// Dense univariate polynomial over Q. Index i holds the coefficient of x^i;
/// trailing zeros are always trimmed so the zero polynomial is empty.
class Poly {
 public:
  Poly() = default;
  explicit Poly(std::vector<Rational> coeffs) : c_(std::move(coeffs)) { trim(); }
  Poly(std::initializer_list<Rational> coeffs) : c_(coeffs) { trim(); }

  static Poly constant(const Rational& c) { return Poly(std::vector<Rational>{c}); }
  static Poly monomial(const Rational& c, std::size_t k) {
    std::vector<Rational> v(k + 1);
    v[k] = c;
    return Poly(std::move(v));
  }
  static Poly x() { return monomial(1, 1); }

  bool is_zero() const { return c_.empty(); }
  std::size_t size() const { return c_.size(); }
  Degree degree() const {
    if (c_.empty()) return Degree::minus_infinity();
    return Degree(static_cast<long>(c_.size()) - 1);
  }
  bool is_constant() const { return c_.size() <= 1; }

  const std::vector<Rational>& coeffs() const { return c_; }
  Rational coeff(std::size_t i) const { return i < c_.size() ? c_[i] : Rational(0); }
  const Rational& leading() const {
    if (c_.empty()) throw Error(Errc::ZeroPolynomial, "leading coefficient of zero");
    return c_.back();
  }

  Rational operator()(const Rational& at) const {
    Rational acc = 0;
    for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * at + *it;
    return acc;
  }

  Poly derivative() const {
    if (c_.size() <= 1) return {};
    std::vector<Rational> d(c_.size() - 1);
    for (std::size_t i = 1; i < c_.size(); ++i) d[i - 1] = c_[i] * static_cast<unsigned long>(i);
    return Poly(std::move(d));
  }

  Poly monic() const {
    if (c_.empty()) return {};
    return *this / leading();
  }

  Poly& operator+=(const Poly& o) {
    if (o.c_.size() > c_.size()) c_.resize(o.c_.size());
    for (std::size_t i = 0; i < o.c_.size(); ++i) c_[i] += o.c_[i];
    trim();
    return *this;
  }
  Poly& operator-=(const Poly& o) {
    if (o.c_.size() > c_.size()) c_.resize(o.c_.size());
    for (std::size_t i = 0; i < o.c_.size(); ++i) c_[i] -= o.c_[i];
    trim();
    return *this;
  }
  Poly& operator*=(const Rational& s) {
    if (sgn(s) == 0) {
      c_.clear();
      return *this;
    }
    for (auto& v : c_) v *= s;
    return *this;
  }
  Poly& operator/=(const Rational& s) {
    if (sgn(s) == 0) throw Error(Errc::DivisionByZeroPoly, "division of a polynomial by zero scalar");
    for (auto& v : c_) v /= s;
    return *this;
  }

  friend Poly operator+(Poly a, const Poly& b) { return a += b; }
  friend Poly operator-(Poly a, const Poly& b) { return a -= b; }
  friend Poly operator-(Poly a) {
    for (auto& v : a.c_) v = -v;
    return a;
  }
  friend Poly operator*(Poly a, const Rational& s) { return a *= s; }
  friend Poly operator*(const Rational& s, Poly a) { return a *= s; }
  friend Poly operator/(Poly a, const Rational& s) { return a /= s; }

  friend Poly operator*(const Poly& a, const Poly& b) {
    if (a.is_zero() || b.is_zero()) return {};
    std::vector<Rational> r(a.c_.size() + b.c_.size() - 1);
    for (std::size_t i = 0; i < a.c_.size(); ++i) {
      if (sgn(a.c_[i]) == 0) continue;
      for (std::size_t j = 0; j < b.c_.size(); ++j) r[i + j] += a.c_[i] * b.c_[j];
    }
    return Poly(std::move(r));
  }
  Poly& operator*=(const Poly& o) { return *this = *this * o; }

  friend bool operator==(const Poly& a, const Poly& b) { return a.c_ == b.c_; }

  /// Descending powers, e.g. "x^3 - 2" or "-7/23*x^2 + x".
  std::string to_string(char var = 'x') const {
    if (c_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (std::size_t k = c_.size(); k-- > 0;) {
      const Rational& a = c_[k];
      if (sgn(a) == 0) continue;
      Rational mag = abs(a);
      if (first) {
        if (sgn(a) < 0) os << '-';
      } else {
        os << (sgn(a) < 0 ? " - " : " + ");
      }
      first = false;
      const bool unit = mag == 1;
      if (k == 0 || !unit) os << sosq::to_string(mag);
      if (k > 0) {
        if (!unit) os << '*';
        os << var;
        if (k > 1) os << '^' << k;
      }
    }
    return os.str();
  }

  friend std::ostream& operator<<(std::ostream& os, const Poly& p) { return os << p.to_string(); }

 private:
  void trim() {
    while (!c_.empty() && sgn(c_.back()) == 0) c_.pop_back();
  }

  std::vector<Rational> c_;
};

struct DivRem {
  Poly quotient;
  Poly remainder;
};

/// Euclidean division a = quotient*b + remainder with deg remainder < deg b.
inline DivRem divrem(const Poly& a, const Poly& b) {
  if (b.is_zero()) throw Error(Errc::DivisionByZeroPoly, "polynomial division by zero");
  if (a.size() < b.size()) return {Poly(), a};
  std::vector<Rational> r = a.coeffs();
  const std::size_t nb = b.size();
  std::vector<Rational> q(a.size() - nb + 1);
  const Rational inv_lead = 1 / b.leading();
  for (std::size_t k = q.size(); k-- > 0;) {
    const Rational t = r[k + nb - 1] * inv_lead;
    q[k] = t;
    if (sgn(t) == 0) continue;
    for (std::size_t j = 0; j < nb; ++j) r[k + j] -= t * b.coeffs()[j];
  }
  r.resize(nb - 1);
  return {Poly(std::move(q)), Poly(std::move(r))};
}

inline Poly rem(const Poly& a, const Poly& b) { return divrem(a, b).remainder; }
inline Poly quo(const Poly& a, const Poly& b) { return divrem(a, b).quotient; }

inline Poly pow(Poly base, unsigned long e) {
  Poly result = Poly::constant(1);
  while (e > 0) {
    if (e & 1u) result *= base;
    e >>= 1u;
    if (e > 0) base *= base;
  }
  return result;
}

/// Squared coefficient 2-norm, sum of p_i^2.
inline Rational norm2_squared(const Poly& p) {
  Rational s = 0;
  for (const auto& c : p.coeffs()) s += c * c;
  return s;
}

/// Builds a polynomial from integer coefficients in ascending order.
inline Poly poly_from_ints(std::initializer_list<long> coeffs) {
  std::vector<Rational> v;
  v.reserve(coeffs.size());
  for (long c : coeffs) v.emplace_back(c);
  return Poly(std::move(v));
}

}  // namespace sosq
