#pragma once

// Irreducible factorization over Q: squarefree split, modular factorization
// (distinct-degree + Cantor-Zassenhaus), quadratic Hensel lifting along a
// balanced factor tree, and subset recombination under the Landau-Mignotte
// coefficient bound.

#include <algorithm>
#include <cstdint>
#include <random>
#include <utility>
#include <vector>

#include "sosq/errors.hpp"
#include "sosq/modular.hpp"
#include "sosq/poly.hpp"
#include "sosq/ratpoly.hpp"

namespace sosq {

using IntPoly = std::vector<Integer>;

inline constexpr std::uint64_t kDefaultFactorSeed = 0x5eedf00dULL;

struct FactorOptions {
  std::uint64_t seed = kDefaultFactorSeed;
  std::size_t degree_cap = 64;
};

/// Monic factors modulo prime^level whose product is congruent to the
/// integral input scaled to be monic.
struct ModularFactorSet {
  std::uint64_t prime = 0;
  unsigned level = 1;
  std::vector<IntPoly> factors;

  Integer modulus() const { return pow_int(Integer(static_cast<unsigned long>(prime)), level); }
};

struct IrreducibleFactor {
  Poly p;
  unsigned e;
};

struct IrreducibleFactorization {
  Rational unit;
  std::vector<IrreducibleFactor> factors;
};

/// Primitive integer polynomial with positive leading coefficient that is a
/// rational multiple of f.
inline IntPoly primitive_integral(const Poly& f) {
  if (f.is_zero()) return {};
  Integer den = 1;
  for (const auto& c : f.coeffs()) mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), c.get_den_mpz_t());
  IntPoly out;
  out.reserve(f.size());
  Integer content = 0;
  for (const auto& c : f.coeffs()) {
    Integer v = c.get_num() * (den / c.get_den());
    mpz_gcd(content.get_mpz_t(), content.get_mpz_t(), v.get_mpz_t());
    out.push_back(std::move(v));
  }
  if (out.back() < 0) content = -content;
  for (auto& v : out) v /= content;
  return out;
}

inline Poly to_poly(const IntPoly& a) {
  std::vector<Rational> v;
  v.reserve(a.size());
  for (const auto& c : a) v.emplace_back(c);
  return Poly(std::move(v));
}

namespace detail {

inline IntPoly to_int(const modp::Coeffs& a) {
  IntPoly r;
  r.reserve(a.size());
  for (auto c : a) r.emplace_back(static_cast<unsigned long>(c));
  return r;
}

inline bool lex_less(const Poly& a, const Poly& b) {
  if (a.size() != b.size()) return a.size() < b.size();
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a.coeffs()[i] != b.coeffs()[i]) return a.coeffs()[i] < b.coeffs()[i];
  }
  return false;
}

inline bool lex_less(const modp::Coeffs& a, const modp::Coeffs& b) {
  if (a.size() != b.size()) return a.size() < b.size();
  return a < b;
}

/// True when p divides no leading coefficient and f stays squarefree mod p.
inline bool good_prime(const IntPoly& f, std::uint64_t p) {
  if (modp::reduce(f.back(), p) == 0) return false;
  const modp::Coeffs fp = modp::reduce(f, p);
  return modp::gcd(fp, modp::derivative(fp, p), p).size() == 1;
}

/// One quadratic Hensel step: from f = g*h, s*g + t*h = 1 (mod m) to the
/// same relations modulo m^2; h is monic.
inline void hensel_step(const IntPoly& f, IntPoly& g, IntPoly& h, IntPoly& s, IntPoly& t, const Integer& m2) {
  using namespace modm;
  const Coeffs e = sub(f, mul(g, h, m2), m2);
  auto [q, r] = divrem_monic(mul(s, e, m2), h, m2);
  Coeffs g2 = add(add(g, mul(t, e, m2), m2), mul(q, g, m2), m2);
  Coeffs h2 = add(h, r, m2);
  const Coeffs b = sub(add(mul(s, g2, m2), mul(t, h2, m2), m2), Coeffs{Integer(1)}, m2);
  auto [c, d] = divrem_monic(mul(s, b, m2), h2, m2);
  s = sub(s, d, m2);
  t = sub(sub(t, mul(t, b, m2), m2), mul(c, g2, m2), m2);
  g = std::move(g2);
  h = std::move(h2);
}

inline modp::Coeffs product_mod_p(const std::vector<modp::Coeffs>& fs, std::size_t lo, std::size_t hi,
                                  std::uint64_t p) {
  modp::Coeffs r{1};
  for (std::size_t i = lo; i < hi; ++i) r = modp::mul(r, fs[i], p);
  return r;
}

/// Lifts factors[lo, hi) of the monic F (given modulo M) to modulo M.
inline void lift_tree(const IntPoly& F, const std::vector<modp::Coeffs>& factors, std::size_t lo, std::size_t hi,
                      std::uint64_t p, const Integer& M, std::vector<IntPoly>& out) {
  if (hi - lo == 1) {
    out.push_back(modm::reduce(F, M));
    return;
  }
  const std::size_t mid = lo + (hi - lo) / 2;
  const modp::Coeffs g0 = product_mod_p(factors, lo, mid, p);
  const modp::Coeffs h0 = product_mod_p(factors, mid, hi, p);
  const modp::Xgcd bz = modp::xgcd(g0, h0, p);
  if (bz.g.size() != 1) throw Error(Errc::LiftFailure, "modular factors are not pairwise coprime");
  IntPoly g = to_int(g0), h = to_int(h0), s = to_int(bz.s), t = to_int(bz.t);
  Integer m(static_cast<unsigned long>(p));
  while (m < M) {
    const Integer m2 = m * m;
    hensel_step(F, g, h, s, t, m2);
    m = m2;
  }
  g = modm::reduce(g, M);
  h = modm::reduce(h, M);
  lift_tree(g, factors, lo, mid, p, M, out);
  lift_tree(h, factors, mid, hi, p, M, out);
}

}  // namespace detail

/// Complete monic irreducible factorization of an integral squarefree f
/// modulo an odd prime.
inline ModularFactorSet factor_mod_p(const IntPoly& f, std::uint64_t prime, std::uint64_t seed = kDefaultFactorSeed) {
  if (prime < 3 || !modp::is_prime(prime) || prime >= (1ULL << 32))
    throw Error(Errc::BadPrime, "factor_mod_p needs an odd prime below 2^32");
  if (f.size() < 2) throw Error(Errc::ZeroOrConstant, "factor_mod_p of a constant");
  if (!detail::good_prime(f, prime))
    throw Error(Errc::BadPrime, "prime divides the leading coefficient or f is not squarefree modulo it");
  const modp::Coeffs fp = modp::monic(modp::reduce(f, prime), prime);
  std::mt19937_64 rng(seed);
  std::vector<modp::Coeffs> parts;
  for (const auto& [g, d] : modp::distinct_degree(fp, prime)) modp::equal_degree(g, d, prime, rng, parts);
  std::sort(parts.begin(), parts.end(), [](const auto& a, const auto& b) { return detail::lex_less(a, b); });
  ModularFactorSet out{prime, 1, {}};
  for (const auto& c : parts) out.factors.push_back(detail::to_int(c));
  return out;
}

/// Smallest level l with prime^l > 2 |lc| 2^n ||f||_2, enough to recover any
/// lc-scaled integer factor from its symmetric residue.
inline unsigned mignotte_level(const IntPoly& f, std::uint64_t prime) {
  Integer norm2 = 0;
  for (const auto& c : f) norm2 += c * c;
  const std::size_t n = f.size() - 1;
  const Integer bound = 2 * abs(f.back()) * (Integer(1) << n) * isqrt_ceil(norm2);
  unsigned level = 1;
  Integer m(static_cast<unsigned long>(prime));
  while (m <= bound) {
    m *= static_cast<unsigned long>(prime);
    ++level;
  }
  return level;
}

/// Lifts mf (a factorization of the integral squarefree f) to
/// prime^target_level.
inline ModularFactorSet hensel_lift_factors(const IntPoly& f, const ModularFactorSet& mf, unsigned target_level) {
  const std::uint64_t p = mf.prime;
  ModularFactorSet out{p, target_level, {}};
  const Integer M = out.modulus();
  if (mf.factors.empty()) return out;
  std::vector<modp::Coeffs> base;
  for (const auto& g : mf.factors) base.push_back(modp::monic(modp::reduce(g, p), p));
  // Monic representative of f modulo M.
  Integer lc_inv;
  if (mpz_invert(lc_inv.get_mpz_t(), f.back().get_mpz_t(), M.get_mpz_t()) == 0)
    throw Error(Errc::BadPrime, "leading coefficient not invertible modulo p^l");
  IntPoly F(f.size());
  for (std::size_t i = 0; i < f.size(); ++i) F[i] = modm::mod(f[i] * lc_inv, M);
  detail::lift_tree(F, base, 0, base.size(), p, M, out.factors);
  return out;
}

/// Zassenhaus subset recombination with exact trial division. mf must be
/// lifted past mignotte_level of the integral form of f.
inline std::vector<Poly> recombine(const ModularFactorSet& mf, const Poly& f) {
  IntPoly F = primitive_integral(f);
  const Integer M = mf.modulus();
  std::vector<IntPoly> remaining = mf.factors;
  std::vector<Poly> found;
  std::size_t s = 1;
  while (2 * s <= remaining.size()) {
    bool split = false;
    std::vector<std::size_t> idx(s);
    for (std::size_t i = 0; i < s; ++i) idx[i] = i;
    while (true) {
      modm::Coeffs cand{F.back()};
      for (std::size_t i : idx) cand = modm::mul(cand, remaining[i], M);
      const IntPoly G = primitive_integral(to_poly(modm::symmetric(cand, M)));
      bool divides = G.size() > 1;
      if (divides && F.front() != 0 && G.front() != 0 && !mpz_divisible_p(F.front().get_mpz_t(), G.front().get_mpz_t()))
        divides = false;
      if (divides) {
        const DivRem qr = divrem(to_poly(F), to_poly(G));
        if (qr.remainder.is_zero()) {
          found.push_back(to_poly(G));
          F = primitive_integral(qr.quotient);
          std::vector<IntPoly> rest;
          for (std::size_t i = 0, k = 0; i < remaining.size(); ++i) {
            if (k < s && idx[k] == i) {
              ++k;
              continue;
            }
            rest.push_back(remaining[i]);
          }
          remaining = std::move(rest);
          split = true;
          break;
        }
      }
      // next combination
      std::size_t k = s;
      while (k > 0 && idx[k - 1] == remaining.size() - s + k - 1) --k;
      if (k == 0) break;
      ++idx[k - 1];
      for (std::size_t j = k; j < s; ++j) idx[j] = idx[j - 1] + 1;
    }
    if (!split) ++s;
  }
  if (F.size() > 1) found.push_back(to_poly(F));
  for (auto& g : found) g = g.monic();
  std::sort(found.begin(), found.end(), [](const Poly& a, const Poly& b) { return detail::lex_less(a, b); });
  return found;
}

/// Irreducible monic factors of a squarefree polynomial of degree >= 1.
inline std::vector<Poly> factor_squarefree(const Poly& f, const FactorOptions& opts = {}) {
  if (f.size() == 2) return {f.monic()};
  const IntPoly F = primitive_integral(f);
  std::uint64_t p = 3;
  while (!detail::good_prime(F, p)) {
    do p += 2;
    while (!modp::is_prime(p));
  }
  ModularFactorSet mf = factor_mod_p(F, p, opts.seed);
  if (mf.factors.size() == 1) return {f.monic()};
  mf = hensel_lift_factors(F, mf, mignotte_level(F, p));
  return recombine(mf, f);
}

inline IrreducibleFactorization factor_over_Q(const Poly& f, const FactorOptions& opts = {}) {
  if (f.is_zero() || f.is_constant()) throw Error(Errc::ZeroOrConstant, "factor_over_Q needs degree >= 1");
  if (static_cast<std::size_t>(f.degree().value()) > opts.degree_cap)
    throw Error(Errc::DegreeTooLarge, "degree " + std::to_string(f.degree().value()) + " exceeds the cap of " +
                                          std::to_string(opts.degree_cap));
  const SquarefreeDecomposition sq = squarefree_decompose(f);
  IrreducibleFactorization out{sq.unit, {}};
  for (const auto& part : sq.parts)
    for (auto& p : factor_squarefree(part.factor, opts)) out.factors.push_back({std::move(p), part.multiplicity});
  std::sort(out.factors.begin(), out.factors.end(),
            [](const IrreducibleFactor& a, const IrreducibleFactor& b) { return detail::lex_less(a.p, b.p); });
  return out;
}

}  // namespace sosq
