#pragma once

#include <gmpxx.h>

#include <cstddef>
#include <stdexcept>
#include <string>
#include <string_view>

namespace sosq {

using Integer = mpz_class;
/// Reduced fraction with positive denominator. Every constructor path in
/// this library canonicalizes, so 0 is always 0/1.
using Rational = mpq_class;

inline Rational make_rational(const Integer& num, const Integer& den) {
  if (den == 0) throw std::invalid_argument("rational with zero denominator");
  Rational r(num, den);
  r.canonicalize();
  return r;
}

inline int sign(const Rational& r) { return sgn(r); }

/// Accepts "[-]digits" or "[-]digits/digits".
inline Rational parse_rational(std::string_view text) {
  auto digits = [](std::string_view s) {
    if (s.empty()) return false;
    for (char c : s)
      if (c < '0' || c > '9') return false;
    return true;
  };
  std::string_view body = text;
  bool negative = false;
  if (!body.empty() && body.front() == '-') {
    negative = true;
    body.remove_prefix(1);
  }
  const auto slash = body.find('/');
  std::string_view num = body.substr(0, slash);
  std::string_view den = slash == std::string_view::npos ? std::string_view("1") : body.substr(slash + 1);
  if (!digits(num) || !digits(den)) throw std::invalid_argument("malformed rational '" + std::string(text) + "'");
  Integer n(std::string(num), 10);
  Integer d(std::string(den), 10);
  if (negative) n = -n;
  return make_rational(n, d);
}

/// Canonical text: "num/den", or just "num" when the denominator is 1.
inline std::string to_string(const Rational& r) { return r.get_str(10); }

inline Integer floor(const Rational& r) {
  Integer q;
  mpz_fdiv_q(q.get_mpz_t(), r.get_num_mpz_t(), r.get_den_mpz_t());
  return q;
}

inline Integer ceil(const Rational& r) {
  Integer q;
  mpz_cdiv_q(q.get_mpz_t(), r.get_num_mpz_t(), r.get_den_mpz_t());
  return q;
}

/// Nearest integer, ties away from zero.
inline Integer round_nearest(const Rational& r) {
  const Rational half(1, 2);
  if (sgn(r) >= 0) return floor(Rational(r + half));
  return -floor(Rational(-r + half));
}

inline Integer isqrt_floor(const Integer& n) {
  if (n < 0) throw std::domain_error("isqrt of negative integer");
  Integer s;
  mpz_sqrt(s.get_mpz_t(), n.get_mpz_t());
  return s;
}

inline Integer isqrt_ceil(const Integer& n) {
  Integer s = isqrt_floor(n);
  if (s * s < n) ++s;
  return s;
}

inline Integer pow_int(const Integer& base, unsigned long e) {
  Integer r;
  mpz_pow_ui(r.get_mpz_t(), base.get_mpz_t(), e);
  return r;
}

inline Rational pow10(unsigned long e) { return Rational(pow_int(10, e)); }

/// Rational u with sqrt(r) <= u <= sqrt(r) + 2^-bits.
inline Rational sqrt_upper_bound(const Rational& r, unsigned bits = 64) {
  if (sgn(r) < 0) throw std::domain_error("sqrt of negative rational");
  // sqrt(a/b) = sqrt(a*b*4^k) / (b*2^k)
  const Integer scale = Integer(1) << bits;
  const Integer radicand = r.get_num() * r.get_den() * scale * scale;
  return make_rational(isqrt_ceil(radicand), r.get_den() * scale);
}

inline Rational sqrt_lower_bound(const Rational& r, unsigned bits = 64) {
  if (sgn(r) < 0) throw std::domain_error("sqrt of negative rational");
  const Integer scale = Integer(1) << bits;
  const Integer radicand = r.get_num() * r.get_den() * scale * scale;
  return make_rational(isqrt_floor(radicand), r.get_den() * scale);
}

/// Bit length of the larger of |numerator| and denominator.
inline std::size_t bit_size(const Rational& r) {
  const std::size_t n = sgn(r) == 0 ? 0 : mpz_sizeinbase(r.get_num_mpz_t(), 2);
  const std::size_t d = mpz_sizeinbase(r.get_den_mpz_t(), 2);
  return n > d ? n : d;
}

}  // namespace sosq
