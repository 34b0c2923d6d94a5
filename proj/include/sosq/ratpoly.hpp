#pragma once

#include <cstddef>
#include <utility>
#include <vector>

#include "sosq/errors.hpp"
#include "sosq/poly.hpp"

namespace sosq {

/// Monic greatest common divisor.
inline Poly gcd(Poly a, Poly b) {
  if (a.is_zero() && b.is_zero()) throw Error(Errc::BothZero, "gcd(0, 0) is undefined");
  while (!b.is_zero()) {
    Poly r = rem(a, b);
    a = std::move(b);
    b = r.is_zero() ? r : r.monic();
  }
  return a.monic();
}

struct Bezout {
  Poly gcd;
  Poly s;
  Poly t;
};

/// Returns (g, s, t) with s*a + t*b = g, g monic, and the cofactors in the
/// canonical minimal-degree form deg s < deg b - deg g, deg t < deg a - deg g.
inline Bezout extended_gcd(const Poly& a, const Poly& b) {
  if (a.is_zero() && b.is_zero()) throw Error(Errc::BothZero, "extended_gcd(0, 0) is undefined");
  if (b.is_zero()) return {a.monic(), Poly::constant(1 / a.leading()), Poly()};
  if (a.is_zero()) return {b.monic(), Poly(), Poly::constant(1 / b.leading())};

  Poly r0 = a, r1 = b;
  Poly s0 = Poly::constant(1), s1;
  Poly t0, t1 = Poly::constant(1);
  while (!r1.is_zero()) {
    DivRem qr = divrem(r0, r1);
    Poly s2 = s0 - qr.quotient * s1;
    Poly t2 = t0 - qr.quotient * t1;
    r0 = std::move(r1);
    r1 = std::move(qr.remainder);
    s0 = std::move(s1);
    s1 = std::move(s2);
    t0 = std::move(t1);
    t1 = std::move(t2);
  }
  const Rational lc = r0.leading();
  Poly g = r0 / lc;
  Poly s = s0 / lc;
  // Canonical pair: reduce s modulo b/g, then solve for t exactly.
  const Poly b_over_g = quo(b, g);
  if (!b_over_g.is_constant()) s = rem(s, b_over_g);
  else s = Poly();
  Poly t = quo(g - s * a, b);
  return {std::move(g), std::move(s), std::move(t)};
}

/// Inverse of a modulo m; throws NotCoprime when gcd(a, m) != 1.
inline Poly inverse_mod(const Poly& a, const Poly& m) {
  Bezout bz = extended_gcd(rem(a, m), m);
  if (bz.gcd.size() != 1) throw Error(Errc::NotCoprime, "polynomial is not invertible modulo " + m.to_string());
  return bz.s;
}

struct SquarefreePart {
  Poly factor;
  unsigned multiplicity;
};

/// f = unit * prod factor_i^multiplicity_i with monic, squarefree, pairwise
/// coprime factors.
struct SquarefreeDecomposition {
  Rational unit;
  std::vector<SquarefreePart> parts;
};

/// Yun's algorithm.
inline SquarefreeDecomposition squarefree_decompose(const Poly& f) {
  if (f.is_zero()) throw Error(Errc::ZeroPolynomial, "squarefree decomposition of zero");
  SquarefreeDecomposition out{f.leading(), {}};
  if (f.is_constant()) return out;
  const Poly fm = f.monic();
  const Poly df = fm.derivative();
  Poly a = gcd(fm, df);
  Poly b = quo(fm, a);
  Poly c = quo(df, a);
  Poly d = c - b.derivative();
  unsigned i = 1;
  while (!b.is_constant()) {
    a = gcd(b, d);
    b = quo(b, a);
    c = quo(d, a);
    d = c - b.derivative();
    if (!a.is_constant()) out.parts.push_back({a, i});
    ++i;
  }
  return out;
}

inline bool is_squarefree(const Poly& f) {
  if (f.is_zero()) return false;
  if (f.is_constant()) return true;
  return gcd(f, f.derivative()).is_constant();
}

/// Sturm chain f, f', -rem(...), ... .
inline std::vector<Poly> sturm_sequence(const Poly& f) {
  std::vector<Poly> seq{f, f.derivative()};
  while (!seq.back().is_zero()) {
    Poly r = -rem(seq[seq.size() - 2], seq.back());
    if (r.is_zero()) break;
    seq.push_back(std::move(r));
  }
  if (seq.back().is_zero()) seq.pop_back();
  return seq;
}

namespace detail {
inline std::size_t sign_variations(const std::vector<int>& signs) {
  std::size_t v = 0;
  int last = 0;
  for (int s : signs) {
    if (s == 0) continue;
    if (last != 0 && s != last) ++v;
    last = s;
  }
  return v;
}
}  // namespace detail

/// Number of distinct real roots of a squarefree f.
inline std::size_t sturm_real_root_count(const Poly& f) {
  if (f.is_zero()) throw Error(Errc::ZeroPolynomial, "sturm count of zero polynomial");
  if (f.is_constant()) return 0;
  if (!is_squarefree(f)) throw Error(Errc::NotSquarefree, "sturm_real_root_count requires a squarefree input");
  const auto seq = sturm_sequence(f);
  std::vector<int> at_pos, at_neg;
  for (const auto& p : seq) {
    const int s = sgn(p.leading());
    at_pos.push_back(s);
    at_neg.push_back(p.degree().value() % 2 == 0 ? s : -s);
  }
  return detail::sign_variations(at_neg) - detail::sign_variations(at_pos);
}

/// Number of distinct real roots in the half-open interval (lo, hi].
inline std::size_t sturm_root_count_in(const Poly& f, const Rational& lo, const Rational& hi) {
  if (!is_squarefree(f)) throw Error(Errc::NotSquarefree, "sturm count requires a squarefree input");
  if (f.is_constant()) return 0;
  const auto seq = sturm_sequence(f);
  std::vector<int> a, b;
  for (const auto& p : seq) {
    a.push_back(sgn(p(lo)));
    b.push_back(sgn(p(hi)));
  }
  return detail::sign_variations(a) - detail::sign_variations(b);
}

}  // namespace sosq
