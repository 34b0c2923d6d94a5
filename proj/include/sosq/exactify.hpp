#pragma once

// From a floating-point Gram pair to an exact rational certificate: round,
// project onto the affine space of Gram matrices of the target, check
// positive definiteness exactly and read the squares off an LDL^T
// factorization.

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "sosq/errors.hpp"
#include "sosq/factor.hpp"
#include "sosq/matrix.hpp"
#include "sosq/numeric.hpp"
#include "sosq/poly.hpp"
#include "sosq/ratpoly.hpp"

namespace sosq {

/// Raised when the retry budget is spent; carries the last estimates.
class PrecisionExhaustedError : public Error {
 public:
  PrecisionExhaustedError(double sigma, double rho, long precision_bits, const std::string& what)
      : Error(Errc::PrecisionExhausted, what), sigma_(sigma), rho_(rho), precision_bits_(precision_bits) {}
  double sigma() const noexcept { return sigma_; }
  double rho() const noexcept { return rho_; }
  long precision_bits() const noexcept { return precision_bits_; }

 private:
  double sigma_;
  double rho_;
  long precision_bits_;
};

/// Exact identity g = x^T Q x + q f with Q symmetric.
struct GramLift {
  RationalMatrix Q;
  Poly q;
  Poly f;
  Poly g;
};

/// Weighted squares sum_i weights[i] * polys[i]^2, meant modulo `modulus`.
struct SOSDecomposition {
  std::vector<Rational> weights;
  std::vector<Poly> polys;
  Poly modulus;

  std::size_t size() const { return weights.size(); }
};

inline Poly sos_sum(const std::vector<Rational>& weights, const std::vector<Poly>& polys) {
  Poly s;
  for (std::size_t i = 0; i < weights.size(); ++i) s += polys[i] * polys[i] * weights[i];
  return s;
}

inline Poly sos_sum(const SOSDecomposition& sos) { return sos_sum(sos.weights, sos.polys); }

/// True when sum w h^2 = g modulo sos.modulus.
inline bool sos_congruent(const SOSDecomposition& sos, const Poly& g) {
  return rem(sos_sum(sos) - g, sos.modulus).is_zero();
}

/// x^T Q x for the monomial vector x = (1, x, ..., x^{n-1}).
inline Poly gram_poly(const RationalMatrix& Q) {
  const std::size_t n = Q.rows();
  if (n == 0) return Poly();
  std::vector<Rational> c(2 * n - 1);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) c[i + j] += Q(i, j);
  return Poly(std::move(c));
}

/// Q_p: coefficient p_k spread evenly over the k-th antidiagonal.
inline RationalMatrix gram_of_poly(const Poly& p, std::size_t n) {
  if (n == 0) throw Error(Errc::DegreeTooHigh, "Gram matrix needs n >= 1");
  if (!p.is_zero() && static_cast<std::size_t>(p.degree().value()) > 2 * n - 2)
    throw Error(Errc::DegreeTooHigh, "degree exceeds 2n-2 for an n x n Gram matrix");
  RationalMatrix Q(n, n, Rational(0));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      const std::size_t k = i + j;
      const std::size_t s = std::min(k + 1, 2 * n - 1 - k);
      Q(i, j) = p.coeff(k) / Rational(static_cast<unsigned long>(s));
    }
  }
  return Q;
}

/// Orthogonal projection onto { Q : x^T Q x = target }.
inline RationalMatrix project(const RationalMatrix& Qbar, const Poly& target) {
  const std::size_t n = Qbar.rows();
  return Qbar - gram_of_poly(gram_poly(Qbar) - target, n);
}

inline Rational to_rational(double d) { return Rational(d); }

/// Rounding radius that keeps the projected matrix positive definite:
/// 0.99 (sigma - rho) / (n + (n-1) sqrt(n) ||f||), with upper bounds on the
/// square roots. Non-positive when rho >= sigma.
inline Rational delta_bound(const Poly& f, double sigma, double rho) {
  const long n = f.degree().value();
  const Rational gap = to_rational(sigma) - to_rational(rho);
  if (sgn(gap) <= 0) return gap;
  Rational den(n);
  if (n > 1) den += Rational(n - 1) * sqrt_upper_bound(Rational(n)) * sqrt_upper_bound(norm2_squared(f));
  return Rational(99, 100) * gap / den;
}

/// ceil(log10(1/delta)) clamped to [1, cap].
inline int digits_for(const Rational& delta, int cap = 64) {
  if (sgn(delta) <= 0) return cap;
  int t = 0;
  Rational scale = 1;
  while (scale * delta < 1 && t < cap) {
    scale *= 10;
    ++t;
  }
  return std::clamp(t, 1, cap);
}

/// Nearest multiple of 10^-t, ties away from zero.
inline Rational round_to_digits(const Rational& v, int t) {
  const Rational scale = pow10(static_cast<unsigned long>(t));
  return Rational(round_nearest(v * scale)) / scale;
}

inline Rational round_to_digits(const BigFloat& v, int t) { return round_to_digits(v.to_rational(), t); }

template <typename T>
RationalMatrix round_to_digits(const Matrix<T>& M, int t) {
  RationalMatrix R(M.rows(), M.cols(), Rational(0));
  for (std::size_t i = 0; i < M.rows(); ++i) {
    for (std::size_t j = 0; j <= i && j < M.cols(); ++j) {
      R(i, j) = round_to_digits(M(i, j), t);
      if (j < M.rows() && i < M.cols()) R(j, i) = R(i, j);
    }
  }
  return R;
}

template <typename T>
Poly round_to_digits(const std::vector<T>& coeffs, int t) {
  std::vector<Rational> c;
  c.reserve(coeffs.size());
  for (const auto& v : coeffs) c.push_back(round_to_digits(v, t));
  return Poly(std::move(c));
}

inline Poly round_to_digits(const Poly& p, int t) { return round_to_digits(p.coeffs(), t); }

struct LdlReport {
  bool ok = false;
  RationalMatrix L;        // unit lower triangular
  std::vector<Rational> D;  // pivots computed so far
  std::size_t failing_pivot = 0;  // meaningful when !ok
};

/// Exact square-root-free Cholesky Q = L D L^T; fails at the first pivot
/// that is not strictly positive.
inline LdlReport check_positive_definite(const RationalMatrix& Q) {
  const std::size_t n = Q.rows();
  LdlReport r;
  r.L = RationalMatrix::identity(n, Rational(0), Rational(1));
  if (!Q.is_symmetric()) {
    r.failing_pivot = 0;
    return r;
  }
  for (std::size_t j = 0; j < n; ++j) {
    Rational dj = Q(j, j);
    for (std::size_t k = 0; k < j; ++k) dj -= r.L(j, k) * r.L(j, k) * r.D[k];
    r.D.push_back(dj);
    if (sgn(dj) <= 0) {
      r.failing_pivot = j;
      return r;
    }
    for (std::size_t i = j + 1; i < n; ++i) {
      Rational v = Q(i, j);
      for (std::size_t k = 0; k < j; ++k) v -= r.L(i, k) * r.L(j, k) * r.D[k];
      r.L(i, j) = v / dj;
    }
  }
  r.ok = true;
  return r;
}

/// Columns of L as polynomials, pivots of D as weights.
inline SOSDecomposition gram_to_sos(const GramLift& lift) {
  const auto ldl = check_positive_definite(lift.Q);
  if (!ldl.ok)
    throw Error(Errc::IllConditioned,
                "Gram matrix is not positive definite (pivot " + std::to_string(ldl.failing_pivot) + ")");
  const std::size_t n = lift.Q.rows();
  SOSDecomposition sos;
  sos.modulus = lift.f;
  for (std::size_t i = 0; i < n; ++i) {
    std::vector<Rational> c(n);
    for (std::size_t a = 0; a < n; ++a) c[a] = ldl.L(a, i);
    sos.weights.push_back(ldl.D[i]);
    sos.polys.emplace_back(std::move(c));
  }
  return sos;
}

struct CertifyOptions {
  long precision_bits = kDefaultPrecisionBits;
  long precision_cap = kPrecisionCap;
  int max_retries = 3;
  int digits_cap = 64;
  double lambda_factor = 2.0;
  std::uint64_t seed = kDefaultFactorSeed;
  bool parallel = true;
};

struct StrictCertificate {
  GramLift lift;
  SOSDecomposition sos;
  long precision_bits = 0;
  int digits = 0;
};

namespace detail {

/// A real root of f at which g vanishes, if any (g already reduced mod f).
inline std::optional<double> common_real_root(const Poly& f, const Poly& g, long prec) {
  const Poly d = g.is_zero() ? f.monic() : gcd(f, g);
  if (d.is_constant()) return std::nullopt;
  if (sturm_real_root_count(d) == 0) return std::nullopt;
  const auto roots = find_roots(d, prec);
  return roots.real_roots.front().to_double();
}

}  // namespace detail

/// Exact certificate g = sum w_i h_i^2 + q f for squarefree f and g > 0 at
/// every real root of f. Precision doubles whenever rounding cannot be
/// shown safe or the exact positive definiteness check fails.
inline StrictCertificate certify_strict_squarefree(const Poly& f, const Poly& g, const CertifyOptions& opts = {}) {
  if (f.is_zero() || f.is_constant()) throw Error(Errc::ZeroOrConstant, "modulus must have degree >= 1");
  if (!is_squarefree(f)) throw Error(Errc::NotSquarefree, "modulus must be squarefree");
  const auto [quotient, gr] = divrem(g, f);
  if (auto root = detail::common_real_root(f, gr, opts.precision_bits))
    throw NotStrictlyPositiveError(*root, 0.0, "g vanishes at a real root of f");

  double sigma = 0, rho = 0;
  long prec = opts.precision_bits;
  for (int attempt = 0; attempt <= opts.max_retries && prec <= opts.precision_cap; ++attempt, prec *= 2) {
    InteriorGram ig;
    try {
      ig = build_interior_gram(f, gr, find_roots(f, prec, opts.precision_cap), opts.lambda_factor);
    } catch (const Error& e) {
      if (e.code() == Errc::IllConditioned || e.code() == Errc::RootClassificationUnstable) continue;
      throw;
    }
    sigma = ig.sigma;
    rho = ig.rho;
    if (!ig.definite) continue;
    const Rational delta = delta_bound(f, sigma, rho);
    if (sgn(delta) <= 0) continue;
    const int t = digits_for(delta, opts.digits_cap);
    for (int tt : {t, std::min(t + 2, opts.digits_cap)}) {
      const RationalMatrix Qbar = round_to_digits(ig.Qstar, tt);
      const Poly qbar = round_to_digits(ig.qstar, tt);
      GramLift lift{project(Qbar, gr - qbar * f), qbar + quotient, f, g};
      if (!check_positive_definite(lift.Q).ok) continue;
      SOSDecomposition sos = gram_to_sos(lift);
      if (!(sos_sum(sos) + lift.q * f == g))
        throw Error(Errc::IllConditioned, "internal: exact identity check failed");
      return {std::move(lift), std::move(sos), prec, tt};
    }
  }
  throw PrecisionExhaustedError(sigma, rho, std::min(prec, opts.precision_cap),
                                "no positive definite rounding found up to " +
                                    std::to_string(opts.precision_cap) + " bits (sigma=" + std::to_string(sigma) +
                                    ", rho=" + std::to_string(rho) + ")");
}

}  // namespace sosq
