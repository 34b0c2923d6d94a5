#pragma once

// Dense polynomial arithmetic over Z/pZ (word-size primes) and over Z/mZ
// (arbitrary-precision moduli). Coefficient vectors are ascending and
// trimmed; the empty vector is zero.

#include <cstdint>
#include <random>
#include <utility>
#include <vector>

#include "sosq/errors.hpp"
#include "sosq/rational.hpp"

namespace sosq::modp {

using Coeffs = std::vector<std::uint64_t>;

inline void trim(Coeffs& a) {
  while (!a.empty() && a.back() == 0) a.pop_back();
}

inline std::uint64_t mulmod(std::uint64_t a, std::uint64_t b, std::uint64_t p) {
  return static_cast<std::uint64_t>(static_cast<unsigned __int128>(a) * b % p);
}

inline std::uint64_t powmod(std::uint64_t a, std::uint64_t e, std::uint64_t p) {
  std::uint64_t r = 1 % p;
  a %= p;
  while (e) {
    if (e & 1u) r = mulmod(r, a, p);
    a = mulmod(a, a, p);
    e >>= 1u;
  }
  return r;
}

inline std::uint64_t inv(std::uint64_t a, std::uint64_t p) {
  if (a % p == 0) throw Error(Errc::BadPrime, "inverting zero modulo p");
  return powmod(a, p - 2, p);
}

inline bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

inline std::uint64_t reduce(const Integer& v, std::uint64_t p) {
  Integer r;
  mpz_fdiv_r_ui(r.get_mpz_t(), v.get_mpz_t(), p);
  return r.get_ui();
}

inline Coeffs reduce(const std::vector<Integer>& a, std::uint64_t p) {
  Coeffs r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = reduce(a[i], p);
  trim(r);
  return r;
}

inline Coeffs add(const Coeffs& a, const Coeffs& b, std::uint64_t p) {
  Coeffs r(std::max(a.size(), b.size()), 0);
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i];
  for (std::size_t i = 0; i < b.size(); ++i) r[i] = (r[i] + b[i]) % p;
  trim(r);
  return r;
}

inline Coeffs sub(const Coeffs& a, const Coeffs& b, std::uint64_t p) {
  Coeffs r(std::max(a.size(), b.size()), 0);
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i];
  for (std::size_t i = 0; i < b.size(); ++i) r[i] = (r[i] + p - b[i]) % p;
  trim(r);
  return r;
}

inline Coeffs mul(const Coeffs& a, const Coeffs& b, std::uint64_t p) {
  if (a.empty() || b.empty()) return {};
  Coeffs r(a.size() + b.size() - 1, 0);
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] == 0) continue;
    for (std::size_t j = 0; j < b.size(); ++j) r[i + j] = (r[i + j] + mulmod(a[i], b[j], p)) % p;
  }
  trim(r);
  return r;
}

inline Coeffs scale(const Coeffs& a, std::uint64_t s, std::uint64_t p) {
  Coeffs r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = mulmod(a[i], s, p);
  trim(r);
  return r;
}

inline Coeffs monic(const Coeffs& a, std::uint64_t p) {
  if (a.empty()) return a;
  return scale(a, inv(a.back(), p), p);
}

inline std::pair<Coeffs, Coeffs> divrem(const Coeffs& a, const Coeffs& b, std::uint64_t p) {
  if (b.empty()) throw Error(Errc::DivisionByZeroPoly, "division by zero modulo p");
  if (a.size() < b.size()) return {{}, a};
  Coeffs r = a;
  Coeffs q(a.size() - b.size() + 1, 0);
  const std::uint64_t il = inv(b.back(), p);
  for (std::size_t k = q.size(); k-- > 0;) {
    const std::uint64_t t = mulmod(r[k + b.size() - 1], il, p);
    q[k] = t;
    if (t == 0) continue;
    for (std::size_t j = 0; j < b.size(); ++j) r[k + j] = (r[k + j] + p - mulmod(t, b[j], p)) % p;
  }
  r.resize(b.size() - 1);
  trim(r);
  trim(q);
  return {q, r};
}

inline Coeffs rem(const Coeffs& a, const Coeffs& b, std::uint64_t p) { return divrem(a, b, p).second; }

inline Coeffs gcd(Coeffs a, Coeffs b, std::uint64_t p) {
  while (!b.empty()) {
    Coeffs r = rem(a, b, p);
    a = std::move(b);
    b = std::move(r);
  }
  return monic(a, p);
}

struct Xgcd {
  Coeffs g, s, t;
};

/// s*a + t*b = g (monic) modulo p.
inline Xgcd xgcd(const Coeffs& a, const Coeffs& b, std::uint64_t p) {
  Coeffs r0 = a, r1 = b, s0{1}, s1{}, t0{}, t1{1};
  while (!r1.empty()) {
    auto [q, r] = divrem(r0, r1, p);
    Coeffs s2 = sub(s0, mul(q, s1, p), p);
    Coeffs t2 = sub(t0, mul(q, t1, p), p);
    r0 = std::move(r1);
    r1 = std::move(r);
    s0 = std::move(s1);
    s1 = std::move(s2);
    t0 = std::move(t1);
    t1 = std::move(t2);
  }
  if (r0.empty()) return {{}, s0, t0};
  const std::uint64_t il = inv(r0.back(), p);
  return {scale(r0, il, p), scale(s0, il, p), scale(t0, il, p)};
}

inline Coeffs derivative(const Coeffs& a, std::uint64_t p) {
  if (a.size() <= 1) return {};
  Coeffs d(a.size() - 1);
  for (std::size_t i = 1; i < a.size(); ++i) d[i - 1] = mulmod(a[i], i % p, p);
  trim(d);
  return d;
}

/// base^e mod (m, p) for an arbitrary-precision exponent.
inline Coeffs powmod(Coeffs base, const Integer& e, const Coeffs& m, std::uint64_t p) {
  Coeffs result{1};
  result = rem(result, m, p);
  base = rem(base, m, p);
  const std::size_t bits = e == 0 ? 0 : mpz_sizeinbase(e.get_mpz_t(), 2);
  for (std::size_t i = bits; i-- > 0;) {
    result = rem(mul(result, result, p), m, p);
    if (mpz_tstbit(e.get_mpz_t(), i)) result = rem(mul(result, base, p), m, p);
  }
  return result;
}

/// Distinct-degree factorization of a monic squarefree polynomial: pairs
/// (product of all irreducible factors of degree d, d).
inline std::vector<std::pair<Coeffs, std::size_t>> distinct_degree(Coeffs f, std::uint64_t p) {
  std::vector<std::pair<Coeffs, std::size_t>> out;
  const Coeffs x{0, 1};
  Coeffs h = rem(x, f, p);
  for (std::size_t d = 1; f.size() - 1 >= 2 * d; ++d) {
    h = powmod(h, Integer(static_cast<unsigned long>(p)), f, p);
    Coeffs g = gcd(f, sub(h, x, p), p);
    if (g.size() > 1) {
      out.emplace_back(g, d);
      f = divrem(f, g, p).first;
      h = rem(h, f, p);
    }
  }
  if (f.size() > 1) out.emplace_back(f, f.size() - 1);
  return out;
}

/// Cantor-Zassenhaus splitting of a product of degree-d irreducibles (odd p).
inline void equal_degree(const Coeffs& g, std::size_t d, std::uint64_t p, std::mt19937_64& rng,
                         std::vector<Coeffs>& out) {
  const std::size_t n = g.size() - 1;
  if (n == d) {
    out.push_back(g);
    return;
  }
  const Integer e = (pow_int(Integer(static_cast<unsigned long>(p)), d) - 1) / 2;
  for (;;) {
    Coeffs a(n);
    for (auto& c : a) c = rng() % p;
    trim(a);
    if (a.size() <= 1) continue;
    Coeffs b = gcd(g, a, p);
    if (b.size() == 1) {
      Coeffs c = sub(powmod(a, e, g, p), Coeffs{1}, p);
      b = gcd(g, c, p);
    }
    if (b.size() > 1 && b.size() < g.size()) {
      equal_degree(b, d, p, rng, out);
      equal_degree(divrem(g, b, p).first, d, p, rng, out);
      return;
    }
  }
}

}  // namespace sosq::modp

namespace sosq::modm {

// Arithmetic in (Z/mZ)[x], representatives in [0, m).
using Coeffs = std::vector<Integer>;

inline void trim(Coeffs& a) {
  while (!a.empty() && a.back() == 0) a.pop_back();
}

inline Integer mod(const Integer& v, const Integer& m) {
  Integer r;
  mpz_fdiv_r(r.get_mpz_t(), v.get_mpz_t(), m.get_mpz_t());
  return r;
}

inline Coeffs reduce(Coeffs a, const Integer& m) {
  for (auto& c : a) c = mod(c, m);
  trim(a);
  return a;
}

inline Coeffs add(const Coeffs& a, const Coeffs& b, const Integer& m) {
  Coeffs r(std::max(a.size(), b.size()));
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i];
  for (std::size_t i = 0; i < b.size(); ++i) r[i] += b[i];
  return reduce(std::move(r), m);
}

inline Coeffs sub(const Coeffs& a, const Coeffs& b, const Integer& m) {
  Coeffs r(std::max(a.size(), b.size()));
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i];
  for (std::size_t i = 0; i < b.size(); ++i) r[i] -= b[i];
  return reduce(std::move(r), m);
}

inline Coeffs mul(const Coeffs& a, const Coeffs& b, const Integer& m) {
  if (a.empty() || b.empty()) return {};
  Coeffs r(a.size() + b.size() - 1);
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j) r[i + j] += a[i] * b[j];
  return reduce(std::move(r), m);
}

/// Division by a divisor whose leading coefficient is 1 modulo m.
inline std::pair<Coeffs, Coeffs> divrem_monic(const Coeffs& a, const Coeffs& b, const Integer& m) {
  if (b.empty() || mod(b.back() - 1, m) != 0) throw Error(Errc::LiftFailure, "divisor is not monic modulo m");
  if (a.size() < b.size()) return {{}, reduce(a, m)};
  Coeffs r = a;
  Coeffs q(a.size() - b.size() + 1);
  for (std::size_t k = q.size(); k-- > 0;) {
    const Integer t = mod(r[k + b.size() - 1], m);
    q[k] = t;
    if (t == 0) continue;
    for (std::size_t j = 0; j < b.size(); ++j) r[k + j] -= t * b[j];
  }
  r.resize(b.size() - 1);
  return {reduce(std::move(q), m), reduce(std::move(r), m)};
}

/// Maps representatives into (-m/2, m/2].
inline Coeffs symmetric(Coeffs a, const Integer& m) {
  const Integer half = m / 2;
  for (auto& c : a) {
    c = mod(c, m);
    if (c > half) c -= m;
  }
  trim(a);
  return a;
}

}  // namespace sosq::modm
