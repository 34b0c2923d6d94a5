#pragma once

// Lifting SOS decompositions: Newton iteration from p to p^e, Chinese
// remaindering across coprime moduli, and the reduction of a non-negative
// g to a strictly positive b with b d^2 = g mod f.

#include <cstddef>
#include <future>
#include <string>
#include <utility>
#include <vector>

#include "sosq/certificate.hpp"
#include "sosq/errors.hpp"
#include "sosq/exactify.hpp"
#include "sosq/factor.hpp"
#include "sosq/numeric.hpp"
#include "sosq/poly.hpp"
#include "sosq/ratpoly.hpp"

namespace sosq {

/// g is negative (or zero) at a real root of an irreducible factor of f/d.
class NotNonnegativeError : public Error {
 public:
  NotNonnegativeError(Poly factor, double root, double value, const std::string& what)
      : Error(Errc::NotNonnegative, what), factor_(std::move(factor)), root_(root), value_(value) {}
  const Poly& factor() const noexcept { return factor_; }
  double root() const noexcept { return root_; }
  double value() const noexcept { return value_; }

 private:
  Poly factor_;
  double root_;
  double value_;
};

/// Lifts a decomposition of g modulo an irreducible p to one modulo p^e by
/// Newton iteration on a single square: h <- (h + s*gbar)/2 where s inverts
/// h modulo p^(2^(k+1)) and gbar = (g - sum_{i != j} w_i h_i^2) / w_j. The
/// lifted index j is the last one with h_j prime to p. `iterates`, when
/// given, receives h^(0), h^(1), ... before the final reduction.
inline SOSDecomposition hensel_lift_sos(const SOSDecomposition& sos, const Poly& p, unsigned e, const Poly& g,
                                        std::vector<Poly>* iterates = nullptr) {
  if (e == 0) throw Error(Errc::LiftFailure, "exponent must be positive");
  if (p.is_zero() || p.is_constant()) throw Error(Errc::NotIrreducible, "modulus must have degree >= 1");
  if (e == 1) return sos;

  std::size_t j = sos.size();
  for (std::size_t i = sos.size(); i-- > 0;) {
    if (sos.polys[i].is_zero()) continue;
    const Poly d = gcd(sos.polys[i], p);
    if (d.is_constant()) {
      j = i;
      break;
    }
    if (d.degree() < p.degree()) throw Error(Errc::NotIrreducible, "modulus has a proper factor " + d.to_string());
  }
  if (j == sos.size()) throw Error(Errc::NoInvertibleSquare, "every square is divisible by the modulus");

  const Poly pe = pow(p, e);
  Poly gbar = g;
  for (std::size_t i = 0; i < sos.size(); ++i)
    if (i != j) gbar -= sos.polys[i] * sos.polys[i] * sos.weights[i];
  gbar /= sos.weights[j];
  gbar = rem(gbar, pe);

  Poly h = sos.polys[j];
  Poly mod_k = p;  // p^(2^k)
  unsigned reach = 1;
  if (iterates) iterates->push_back(h);
  if (!rem(h * h - gbar, mod_k).is_zero())
    throw Error(Errc::LiftFailure, "input decomposition is not valid modulo p");
  // s tracks h^-1 modulo the current p^(2^k); the residual h^2 - gbar is
  // divisible by that modulus, so the correction only needs s to that order.
  Poly s = inverse_mod(h, p);
  while (reach < e) {
    const Poly mod_next = mod_k * mod_k;
    h = rem(h - rem(rem(h * h - gbar, mod_next) * s, mod_next) / Rational(2), mod_next);
    s = rem(s * (Poly::constant(2) - rem(h * s, mod_next)), mod_next);
    mod_k = mod_next;
    reach *= 2;
    if (iterates) iterates->push_back(h);
    if (!rem(h * h - gbar, mod_k).is_zero()) throw Error(Errc::LiftFailure, "Newton step lost the congruence");
  }
  SOSDecomposition out = sos;
  out.polys[j] = rem(h, pe);
  out.modulus = pe;
  return out;
}

/// Combines decompositions modulo pairwise coprime f_i into one modulo
/// prod f_i by multiplying each square by the idempotent s_i * prod_{k!=i} f_k.
inline SOSDecomposition crt_combine_sos(const std::vector<std::pair<Poly, SOSDecomposition>>& parts,
                                        const Poly& /*g*/) {
  Poly F = Poly::constant(1);
  for (const auto& [fi, sos] : parts) F *= fi;
  SOSDecomposition out;
  out.modulus = F;
  for (const auto& [fi, sos] : parts) {
    const Poly cofactor = quo(F, fi);
    const Poly s = inverse_mod(cofactor, fi);  // NotCoprime when the moduli share a factor
    const Poly idem = rem(s * cofactor, F);
    for (std::size_t i = 0; i < sos.size(); ++i) {
      out.weights.push_back(sos.weights[i]);
      out.polys.push_back(rem(idem * sos.polys[i], F));
    }
  }
  return out;
}

struct StrictReduction {
  Poly d;         // gcd(f, g)
  Poly cofactor;  // f / d
  Poly b;         // b d^2 = g mod f, reduced mod cofactor
};

inline StrictReduction reduce_nonneg_to_strict(const Poly& f, const Poly& g) {
  if (g.is_zero()) throw Error(Errc::ZeroG, "g = 0 has the empty certificate");
  if (f.is_zero()) throw Error(Errc::ZeroOrConstant, "modulus is zero");
  StrictReduction r;
  r.d = gcd(f, g);
  r.cofactor = quo(f, r.d);
  if (!gcd(r.d, r.cofactor).is_constant())
    throw Error(Errc::HypothesisViolated, "gcd(f, g) = " + r.d.to_string() + " shares the factor " +
                                              gcd(r.d, r.cofactor).to_string() + " with f/gcd(f, g)");
  if (r.cofactor.is_constant()) {
    r.b = Poly();
  } else {
    // 1 = s*(f/d) + t*d^2
    const Bezout bz = extended_gcd(r.cofactor, r.d * r.d);
    r.b = rem(bz.t * g, r.cofactor);
  }
  if (!rem(r.b * r.d * r.d - g, f).is_zero()) throw Error(Errc::HypothesisViolated, "internal: b d^2 != g mod f");
  return r;
}

namespace detail {

inline double value_at(const Poly& p, double x) {
  double acc = 0;
  for (std::size_t k = p.size(); k-- > 0;) acc = acc * x + p.coeffs()[k].get_d();
  return acc;
}

/// Strict certificate modulo p^e for b, converting positivity failures into
/// evidence against the original g.
inline SOSDecomposition certify_prime_power(const Poly& p, unsigned e, const Poly& b, const Poly& g,
                                            const CertifyOptions& opts) {
  const Poly pe = pow(p, e);
  StrictCertificate strict;
  try {
    strict = certify_strict_squarefree(p, rem(b, p), opts);
  } catch (const NotStrictlyPositiveError& err) {
    throw NotNonnegativeError(p, err.root(), value_at(g, err.root()),
                              "g is not positive at a real root of the factor " + p.to_string() + " (root ~ " +
                                  std::to_string(err.root()) + ", g ~ " + std::to_string(value_at(g, err.root())) +
                                  ")");
  }
  return hensel_lift_sos(strict.sos, p, e, rem(b, pe));
}

}  // namespace detail

/// Certificate g = sum w_i h_i^2 + q f for g non-negative at the real roots
/// of f, under gcd(gcd(f,g), f/gcd(f,g)) = 1.
inline Certificate certify_nonnegative(const Poly& f, const Poly& g, const CertifyOptions& opts = {}) {
  if (f.is_zero() || f.is_constant()) throw Error(Errc::ZeroOrConstant, "modulus must have degree >= 1");
  Certificate cert{f, g, {}, {}, Poly()};
  if (g.is_zero()) return cert;
  const StrictReduction red = reduce_nonneg_to_strict(f, g);
  if (red.cofactor.is_constant()) {
    cert.q = quo(g, f);
    return cert;
  }

  FactorOptions fopts;
  fopts.seed = opts.seed;
  const IrreducibleFactorization fac = factor_over_Q(red.cofactor, fopts);
  std::vector<std::pair<Poly, SOSDecomposition>> parts(fac.factors.size());
  if (opts.parallel && fac.factors.size() > 1) {
    std::vector<std::future<SOSDecomposition>> jobs;
    for (const auto& fe : fac.factors)
      jobs.push_back(std::async(std::launch::async, [&fe, &red, &g, &opts] {
        return detail::certify_prime_power(fe.p, fe.e, red.b, g, opts);
      }));
    // Join in factor order; the first failure in that order is reported.
    for (std::size_t i = 0; i < jobs.size(); ++i) jobs[i].wait();
    for (std::size_t i = 0; i < jobs.size(); ++i)
      parts[i] = {pow(fac.factors[i].p, fac.factors[i].e), jobs[i].get()};
  } else {
    for (std::size_t i = 0; i < fac.factors.size(); ++i)
      parts[i] = {pow(fac.factors[i].p, fac.factors[i].e),
                  detail::certify_prime_power(fac.factors[i].p, fac.factors[i].e, red.b, g, opts)};
  }
  const SOSDecomposition combined = crt_combine_sos(parts, red.b);
  for (std::size_t i = 0; i < combined.size(); ++i) {
    cert.weights.push_back(combined.weights[i]);
    cert.polys.push_back(red.d * combined.polys[i]);
  }
  const DivRem qr = divrem(g - sos_sum(cert.weights, cert.polys), f);
  if (!qr.remainder.is_zero()) throw Error(Errc::LiftFailure, "internal: assembled squares are not congruent to g");
  cert.q = qr.quotient;
  return cert;
}

}  // namespace sosq
