#pragma once

// Floating-point stage: complex roots by Aberth-Ehrlich iteration, the
// Lagrange basis on those roots, and the positive definite Gram pair
// (Q*, q*) with g = x^T Q* x + q* f built from weighted squares of real and
// imaginary parts of the basis.

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <string>
#include <vector>

#include "sosq/bigfloat.hpp"
#include "sosq/errors.hpp"
#include "sosq/matrix.hpp"
#include "sosq/poly.hpp"
#include "sosq/ratpoly.hpp"

namespace sosq {

inline constexpr long kDefaultPrecisionBits = 106;
inline constexpr long kPrecisionCap = 848;

/// Raised when g is not strictly positive at some real root of f.
class NotStrictlyPositiveError : public Error {
 public:
  NotStrictlyPositiveError(double root, double value, const std::string& what)
      : Error(Errc::NotStrictlyPositive, what), root_(root), value_(value) {}
  double root() const noexcept { return root_; }
  double value() const noexcept { return value_; }

 private:
  double root_;
  double value_;
};

struct RootProfile {
  std::vector<BigFloat> real_roots;    // ascending
  std::vector<Complex> complex_pairs;  // one per conjugate pair, Im > 0
  long precision_bits = kDefaultPrecisionBits;

  std::size_t degree() const { return real_roots.size() + 2 * complex_pairs.size(); }

  /// Roots in labeling order: reals, then (conj(z), z) for each pair.
  std::vector<Complex> all_roots() const {
    std::vector<Complex> out;
    for (const auto& r : real_roots) out.emplace_back(r, BigFloat(r.precision()));
    for (const auto& z : complex_pairs) {
      out.push_back(conj(z));
      out.push_back(z);
    }
    return out;
  }
};

using ComplexPoly = std::vector<Complex>;

namespace detail {

inline std::vector<BigFloat> float_coeffs(const Poly& f, long prec) {
  std::vector<BigFloat> c;
  c.reserve(f.size());
  for (const auto& v : f.coeffs()) c.emplace_back(v, prec);
  return c;
}

inline BigFloat unit_ldexp(long prec, long e) { return ldexp(BigFloat(1.0, prec), e); }

/// Value and derivative at z by Horner's rule.
inline void horner2(const std::vector<BigFloat>& c, const Complex& z, Complex& p, Complex& dp) {
  const long prec = z.precision();
  p = Complex(prec);
  dp = Complex(prec);
  for (std::size_t k = c.size(); k-- > 0;) {
    dp = dp * z + p;
    p = p * z;
    p.re += c[k];
  }
}

inline Complex horner(const std::vector<BigFloat>& c, const Complex& z) {
  Complex p(z.precision());
  for (std::size_t k = c.size(); k-- > 0;) {
    p = p * z;
    p.re += c[k];
  }
  return p;
}

inline Complex horner(const ComplexPoly& c, const Complex& z) {
  Complex p(z.precision());
  for (std::size_t k = c.size(); k-- > 0;) p = p * z + c[k];
  return p;
}

inline BigFloat horner(const std::vector<BigFloat>& c, const BigFloat& x) {
  BigFloat p(x.precision());
  for (std::size_t k = c.size(); k-- > 0;) p = p * x + c[k];
  return p;
}

/// Double-precision Aberth pass used to seed the multiprecision pass.
inline bool aberth_double(const Poly& f, std::vector<std::complex<double>>& z) {
  const std::size_t n = f.size() - 1;
  std::vector<double> c;
  for (const auto& v : f.coeffs()) {
    const double d = v.get_d();
    if (!std::isfinite(d)) return false;
    c.push_back(d);
  }
  if (c.back() == 0.0) return false;
  double radius = 0.0;
  for (std::size_t k = 0; k < n; ++k) {
    const double r = std::pow(std::fabs(c[k] / c[n]), 1.0 / static_cast<double>(n - k));
    radius = std::max(radius, r);
  }
  if (!(radius > 0.0) || !std::isfinite(radius)) radius = 1.0;
  z.resize(n);
  for (std::size_t j = 0; j < n; ++j) {
    const double angle = 2.0 * M_PI * static_cast<double>(j) / static_cast<double>(n) + 0.4;
    z[j] = std::polar(radius, angle);
  }
  for (int iter = 0; iter < 800; ++iter) {
    double worst = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      std::complex<double> p = 0.0, dp = 0.0;
      for (std::size_t k = c.size(); k-- > 0;) {
        dp = dp * z[i] + p;
        p = p * z[i] + c[k];
      }
      if (p == 0.0) continue;
      if (dp == 0.0) {
        z[i] += std::complex<double>(1e-8, 1e-8) * std::max(1.0, std::abs(z[i]));
        worst = 1.0;
        continue;
      }
      const std::complex<double> ratio = p / dp;
      std::complex<double> sum = 0.0;
      for (std::size_t j = 0; j < n; ++j)
        if (j != i) sum += 1.0 / (z[i] - z[j]);
      const std::complex<double> w = ratio / (1.0 - ratio * sum);
      if (!std::isfinite(w.real()) || !std::isfinite(w.imag())) return false;
      z[i] -= w;
      worst = std::max(worst, std::abs(w) / std::max(1.0, std::abs(z[i])));
    }
    if (worst < 1e-14) return true;
  }
  return true;  // not converged; the multiprecision pass continues from here
}

/// Aberth-Ehrlich simultaneous iteration at the given mantissa width.
inline std::vector<Complex> aberth(const Poly& f, long prec) {
  const std::size_t n = f.size() - 1;
  std::vector<Complex> z;
  if (n == 1) {
    z.emplace_back(BigFloat(Rational(-f.coeffs()[0] / f.coeffs()[1]), prec), BigFloat(prec));
    return z;
  }
  std::vector<std::complex<double>> seed;
  const bool seeded = aberth_double(f, seed);
  if (seeded) {
    for (const auto& s : seed) z.emplace_back(BigFloat(s.real(), prec), BigFloat(s.imag(), prec));
  } else {
    // Unit-scale circle in software floats when doubles overflow.
    Rational bound = 0;
    for (std::size_t k = 0; k < n; ++k) bound = std::max(bound, Rational(abs(f.coeffs()[k] / f.leading())));
    const BigFloat radius = BigFloat(Rational(bound + 1), prec);
    for (std::size_t j = 0; j < n; ++j) {
      const double angle = 2.0 * M_PI * static_cast<double>(j) / static_cast<double>(n) + 0.4;
      z.emplace_back(radius * BigFloat(std::cos(angle), prec), radius * BigFloat(std::sin(angle), prec));
    }
  }
  const auto c = float_coeffs(f, prec);
  const BigFloat one(1.0, prec);
  const BigFloat stop = unit_ldexp(prec, -(prec - 8));
  const int max_iter = seeded ? 60 : 2000;
  Complex p(prec), dp(prec);
  for (int iter = 0; iter < max_iter; ++iter) {
    BigFloat worst(prec);
    for (std::size_t i = 0; i < n; ++i) {
      horner2(c, z[i], p, dp);
      if (p.re.sign() == 0 && p.im.sign() == 0) continue;
      if (dp.re.sign() == 0 && dp.im.sign() == 0) {
        z[i].re += unit_ldexp(prec, -20);
        worst = one;
        continue;
      }
      const Complex ratio = p / dp;
      Complex sum(prec);
      for (std::size_t j = 0; j < n; ++j) {
        if (j == i) continue;
        sum += Complex(one, BigFloat(prec)) / (z[i] - z[j]);
      }
      Complex denom = Complex(one, BigFloat(prec)) - ratio * sum;
      const Complex w = ratio / denom;
      z[i] -= w;
      BigFloat scale = abs(z[i]);
      if (scale < one) scale = one;
      const BigFloat rel = abs(w) / scale;
      if (rel > worst) worst = rel;
    }
    if (worst <= stop) break;
  }
  return z;
}

}  // namespace detail

/// Roots of a squarefree f, classified real/non-real and cross-checked
/// against the exact Sturm count; retries at doubled precision up to cap.
inline RootProfile find_roots(const Poly& f, long precision_bits = kDefaultPrecisionBits,
                              long precision_cap = kPrecisionCap) {
  if (f.is_zero() || f.is_constant()) throw Error(Errc::ZeroOrConstant, "find_roots needs degree >= 1");
  if (!is_squarefree(f)) throw Error(Errc::NotSquarefree, "find_roots requires a squarefree polynomial");
  const std::size_t n = f.size() - 1;
  const std::size_t k_exact = sturm_real_root_count(f);
  for (long prec = precision_bits; prec <= precision_cap; prec *= 2) {
    std::vector<Complex> z = detail::aberth(f, prec);
    const BigFloat one(1.0, prec);
    const BigFloat real_tol = detail::unit_ldexp(prec, -prec / 2);
    RootProfile out;
    out.precision_bits = prec;
    std::vector<Complex> upper, lower;
    for (auto& r : z) {
      if (abs(r.im) < real_tol * (one + abs(r.re))) {
        out.real_roots.push_back(r.re);
      } else if (r.im.sign() > 0) {
        upper.push_back(r);
      } else {
        lower.push_back(r);
      }
    }
    if (out.real_roots.size() != k_exact || upper.size() != lower.size()) continue;
    // Newton polish on the real line.
    const auto c = detail::float_coeffs(f, prec);
    const auto dc = detail::float_coeffs(f.derivative(), prec);
    for (auto& x : out.real_roots) {
      for (int it = 0; it < 4; ++it) {
        const BigFloat d = detail::horner(dc, x);
        if (d.sign() == 0) break;
        x -= detail::horner(c, x) / d;
      }
    }
    std::sort(out.real_roots.begin(), out.real_roots.end());
    // Pair each upper root with the nearest conjugate and symmetrize.
    bool paired = true;
    std::vector<bool> used(lower.size(), false);
    for (const auto& u : upper) {
      std::size_t best = lower.size();
      BigFloat best_d(prec);
      for (std::size_t j = 0; j < lower.size(); ++j) {
        if (used[j]) continue;
        const BigFloat d = abs(u - conj(lower[j]));
        if (best == lower.size() || d < best_d) {
          best = j;
          best_d = d;
        }
      }
      if (best == lower.size()) {
        paired = false;
        break;
      }
      used[best] = true;
      const BigFloat half(0.5, prec);
      Complex m = conj(lower[best]);
      out.complex_pairs.emplace_back((u.re + m.re) * half, (u.im + m.im) * half);
    }
    if (!paired) continue;
    std::sort(out.complex_pairs.begin(), out.complex_pairs.end(), [](const Complex& a, const Complex& b) {
      if (!(a.re == b.re)) return a.re < b.re;
      return a.im < b.im;
    });
    if (out.degree() != n) continue;
    return out;
  }
  throw Error(Errc::RootClassificationUnstable,
              "real/complex root classification disagrees with the Sturm count up to " +
                  std::to_string(precision_cap) + " bits");
}

/// Lagrange basis u_i = f / (f'(xi_i) (x - xi_i)) in the labeling order of
/// RootProfile::all_roots, each of degree n-1.
inline std::vector<ComplexPoly> lagrange_basis(const Poly& f, const RootProfile& roots) {
  const long prec = roots.precision_bits;
  const std::size_t n = f.size() - 1;
  const auto xi = roots.all_roots();
  if (xi.size() != n) throw Error(Errc::IllConditioned, "root profile does not match the degree");
  const auto c = detail::float_coeffs(f, prec);
  std::vector<ComplexPoly> basis;
  basis.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    // Synthetic division by (x - xi_i).
    ComplexPoly q(n, Complex(prec));
    Complex acc(prec);
    for (std::size_t k = n; k-- > 0;) {
      acc = acc * xi[i];
      acc.re += c[k + 1];
      q[k] = acc;
    }
    const Complex dfx = detail::horner(q, xi[i]);
    if (dfx.re.sign() == 0 && dfx.im.sign() == 0) throw Error(Errc::IllConditioned, "f'(xi) vanishes");
    for (auto& coef : q) coef = coef / dfx;
    basis.push_back(std::move(q));
  }
  const BigFloat tol = detail::unit_ldexp(prec, -prec / 4);
  const BigFloat one(1.0, prec);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      Complex v = detail::horner(basis[i], xi[j]);
      if (i == j) v.re -= one;
      if (abs(v) > tol) throw Error(Errc::IllConditioned, "Lagrange basis fails u_i(xi_j) = delta_ij; roots are too close");
    }
  }
  return basis;
}

struct RootValue {
  BigFloat root;
  BigFloat value;
  int sign;  // +1 or -1 when certain at this precision, 0 otherwise
};

/// Values of g at the real roots with a conservative sign decision.
inline std::vector<RootValue> values_at_real_roots(const Poly& g, const RootProfile& roots) {
  const long prec = roots.precision_bits;
  const auto c = detail::float_coeffs(g, prec);
  std::vector<RootValue> out;
  for (const auto& x : roots.real_roots) {
    BigFloat v = detail::horner(c, x);
    // |g|_1 * max(1,|x|)^deg g, scaled by the root accuracy.
    BigFloat scale(1.0, prec);
    BigFloat ax = abs(x);
    if (ax < BigFloat(1.0, prec)) ax = BigFloat(1.0, prec);
    BigFloat pw(1.0, prec);
    for (const auto& ci : c) {
      scale += abs(ci) * pw;
      pw *= ax;
    }
    const BigFloat tol = detail::unit_ldexp(prec, -prec / 2) * scale;
    int s = 0;
    if (v > tol) s = 1;
    else if (v < -tol) s = -1;
    out.push_back({x, std::move(v), s});
  }
  return out;
}

/// Interior point (Q*, q*) of the Gram cone for g modulo f.
struct InteriorGram {
  FloatMatrix Qstar;
  std::vector<BigFloat> qstar;  // ascending coefficients, degree <= n-2
  double sigma = 0;             // lower estimate of the smallest eigenvalue of Q*
  double rho = 0;               // upper bound of ||x^T Q* x + q* f - g||
  bool definite = false;        // sigma clearly above rounding noise
  std::vector<BigFloat> weights;
  FloatMatrix H;  // column i holds the coefficients of h_i
};

namespace detail {

inline double to_double_up(const Rational& r) {
  mpfr_t t;
  mpfr_init2(t, 64);
  mpfr_set_q(t, r.get_mpq_t(), MPFR_RNDU);
  const double d = mpfr_get_d(t, MPFR_RNDU);
  mpfr_clear(t);
  return d;
}

/// Coefficients of x^T Q x: entry k sums the k-th antidiagonal.
template <typename T>
std::vector<T> gram_poly_coeffs(const Matrix<T>& Q, const T& zero) {
  const std::size_t n = Q.rows();
  std::vector<T> c(n == 0 ? 0 : 2 * n - 1, zero);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) c[i + j] += Q(i, j);
  return c;
}

}  // namespace detail

/// Builds Q* = H diag(omega) H^T from the Lagrange basis: real roots give
/// (u_i, g(xi_i)); each conjugate pair with gamma = g(xi) and
/// lambda = lambda_factor*|gamma| gives the two squares
///   Re u - Im(gamma)/(lambda+Re gamma) Im u,
///   sqrt(lambda^2-|gamma|^2)/(lambda+Re gamma) Im u,
/// both weighted by 2(lambda + Re gamma). lambda_factor = 1 reproduces the
/// rank-deficient boundary construction and is reported as not definite.
inline InteriorGram build_interior_gram(const Poly& f, const Poly& g, const RootProfile& roots,
                                        double lambda_factor = 2.0) {
  if (!(lambda_factor >= 1.0)) throw Error(Errc::IllConditioned, "lambda_factor must be >= 1");
  const long prec = roots.precision_bits;
  const std::size_t n = f.size() - 1;
  const std::size_t k = roots.real_roots.size();
  const Poly gr = rem(g, f);
  const auto basis = lagrange_basis(f, roots);
  const auto gc = detail::float_coeffs(gr, prec);
  const BigFloat zero(prec), one(1.0, prec), two(2.0, prec);
  const BigFloat tiny = detail::unit_ldexp(prec, -prec / 4);

  InteriorGram out;
  out.H = FloatMatrix(n, n, zero);
  for (const auto& rv : values_at_real_roots(gr, roots)) {
    if (!(rv.value > tiny))
      throw NotStrictlyPositiveError(rv.root.to_double(), rv.value.to_double(),
                                     "g is not strictly positive at the real root " + rv.root.to_string(17));
  }
  for (std::size_t i = 0; i < k; ++i) {
    out.weights.push_back(detail::horner(gc, roots.real_roots[i]));
    for (std::size_t a = 0; a < n; ++a) out.H(a, i) = basis[i][a].re;
  }
  const BigFloat lf(lambda_factor, prec);
  for (std::size_t pi = 0; pi < roots.complex_pairs.size(); ++pi) {
    const Complex& xi = roots.complex_pairs[pi];
    const ComplexPoly& u = basis[k + 2 * pi + 1];
    const Complex gamma = detail::horner(gc, Complex(xi));
    const BigFloat mod = abs(gamma);
    // Any lambda > |gamma| works; when gamma vanishes pick lambda on unit scale.
    const BigFloat lambda = mod > tiny ? lf * mod : lf;
    const BigFloat shift = lambda + gamma.re;
    if (!(shift > tiny)) throw Error(Errc::IllConditioned, "lambda + Re g(xi) is not positive");
    BigFloat rad = lambda * lambda - mod * mod;
    if (rad.sign() < 0) rad = zero;
    const BigFloat ratio = gamma.im / shift;
    const BigFloat scale_b = sqrt(rad) / shift;
    const BigFloat w = two * shift;
    out.weights.push_back(w);
    out.weights.push_back(w);
    for (std::size_t a = 0; a < n; ++a) {
      out.H(a, k + 2 * pi) = u[a].re - ratio * u[a].im;
      out.H(a, k + 2 * pi + 1) = scale_b * u[a].im;
    }
  }

  out.Qstar = FloatMatrix(n, n, zero);
  for (std::size_t a = 0; a < n; ++a) {
    for (std::size_t b = a; b < n; ++b) {
      BigFloat s(prec);
      for (std::size_t i = 0; i < n; ++i) s += out.weights[i] * out.H(a, i) * out.H(b, i);
      out.Qstar(a, b) = s;
      out.Qstar(b, a) = std::move(s);
    }
  }

  // q* = (g - x^T Q* x) div f, by long division in software floats.
  auto rem_c = detail::gram_poly_coeffs(out.Qstar, zero);
  for (auto& v : rem_c) v = -v;
  for (std::size_t i = 0; i < gc.size(); ++i) rem_c[i] += gc[i];
  const auto fc = detail::float_coeffs(f, prec);
  out.qstar.assign(n >= 2 ? n - 1 : 0, zero);
  for (std::size_t d = rem_c.size(); d-- > n;) {
    const BigFloat t = rem_c[d] / fc[n];
    out.qstar[d - n] = t;
    for (std::size_t j = 0; j <= n; ++j) rem_c[d - n + j] -= t * fc[j];
  }

  // rho: exact residual of the float pair (every float is a rational).
  {
    std::vector<Rational> qc(out.qstar.size());
    for (std::size_t i = 0; i < qc.size(); ++i) qc[i] = out.qstar[i].to_rational();
    std::vector<Rational> res(2 * n - 1);
    for (std::size_t a = 0; a < n; ++a)
      for (std::size_t b = 0; b < n; ++b) res[a + b] += out.Qstar(a, b).to_rational();
    Poly residual = Poly(res) + Poly(qc) * f - gr;
    out.rho = detail::to_double_up(sqrt_upper_bound(norm2_squared(residual)));
  }

  const auto eig = jacobi_eigenvalues(out.Qstar);
  BigFloat smallest = *std::min_element(eig.eigenvalues.begin(), eig.eigenvalues.end());
  smallest -= eig.off_diagonal_norm;
  out.sigma = smallest.to_double(MPFR_RNDD);
  BigFloat frob(prec);
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b) frob += out.Qstar(a, b) * out.Qstar(a, b);
  frob = sqrt(frob);
  if (frob < one) frob = one;
  out.definite = smallest > tiny * frob;
  return out;
}

}  // namespace sosq
