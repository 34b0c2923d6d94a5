#include <gtest/gtest.h>

#include "oracles.hpp"
#include "sosq/exactify.hpp"
#include "sosq/parse.hpp"

using namespace sosq;

namespace {

Poly P(const char* s) { return parse_poly(s); }
Rational R(long n, long d = 1) { return make_rational(n, d); }

RationalMatrix M3(std::initializer_list<std::initializer_list<Rational>> rows) { return RationalMatrix(rows); }

const RationalMatrix kToyQbar = M3({{R(6, 10), R(1, 10), R(-2, 10)}, {R(1, 10), R(4, 10), R(-1, 10)},
                                    {R(-2, 10), R(-1, 10), R(4, 10)}});
const RationalMatrix kToyQ = M3({{R(3, 5), R(1, 10), R(-1, 5)}, {R(1, 10), R(2, 5), R(-3, 20)},
                                 {R(-1, 5), R(-3, 20), R(2, 5)}});

}  // namespace

TEST(GramOfPoly, Examples) {
  EXPECT_EQ(gram_of_poly(P("-1/10*x^3 + 1/10*x^2"), 3),
            M3({{0, 0, R(1, 30)}, {0, R(1, 30), R(-1, 20)}, {R(1, 30), R(-1, 20), 0}}));
  EXPECT_EQ(gram_of_poly(Poly(), 3), RationalMatrix(3, 3, Rational(0)));
  EXPECT_EQ(gram_of_poly(P("x^2"), 2), M3({{0, 0}, {0, 1}}));
  try {
    gram_of_poly(P("x^3"), 2);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Errc::DegreeTooHigh);
  }
}

TEST(Project, Examples) {
  const Poly f = P("x^3-2"), g = P("x"), q = P("-0.4x + 0.3");
  EXPECT_EQ(project(kToyQbar, g - q * f), kToyQ);
  EXPECT_EQ(project(kToyQ, g - q * f), kToyQ);

  const RationalMatrix qbar2 = M3({{R(6, 10), 0, R(-2, 10)}, {0, R(5, 10), R(-2, 10)}, {R(-2, 10), R(-2, 10), R(5, 10)}});
  const Poly q2 = P("-0.5x + 0.3");
  const RationalMatrix Q2 = project(qbar2, g - q2 * f);
  EXPECT_EQ(Q2, M3({{R(3, 5), 0, R(-7, 30)}, {0, R(7, 15), R(-3, 20)}, {R(-7, 30), R(-3, 20), R(1, 2)}}));
  EXPECT_TRUE(check_positive_definite(Q2).ok);
}

TEST(DeltaBound, Examples) {
  const Rational d = delta_bound(P("x^3-2"), 0.246693, 1.16e-15);
  EXPECT_NEAR(d.get_d(), 0.0227, 5e-5);
  EXPECT_LT(d.get_d(), 0.99 * 0.246693 / (3 + 2 * std::sqrt(3.0) * std::sqrt(5.0)));
  EXPECT_LE(delta_bound(P("x^3-2"), 0.1, 0.2), 0);
  EXPECT_LE(delta_bound(P("x^3-2"), 0.1, 0.1), 0);
  EXPECT_EQ(delta_bound(P("x-1"), 0.5, 0.25), R(99, 100) * R(1, 4));
}

TEST(DigitsFor, Examples) {
  EXPECT_EQ(digits_for(Rational(0.0227)), 2);
  EXPECT_EQ(digits_for(R(1, 10)), 1);
  EXPECT_EQ(digits_for(R(11, 100)), 1);
  EXPECT_EQ(digits_for(R(5)), 1);
  EXPECT_EQ(digits_for(R(1, 1000)), 3);
  EXPECT_EQ(digits_for(Rational(1) / pow10(100), 64), 64);
}

TEST(RoundToDigits, Examples) {
  // Nearest multiple of 1/100 to 0.2295612 is 23/100.
  EXPECT_EQ(round_to_digits(parse_poly("0.2295612").coeff(0), 2), R(23, 100));
  EXPECT_EQ(round_to_digits(R(3, 5), 1), R(3, 5));
  EXPECT_EQ(round_to_digits(R(-5, 100), 1), R(-1, 10));  // tie away from zero
  // Q* of the cube-root example with one digit gives the toy Qbar.
  const Poly f = P("x^3-2");
  const auto ig = build_interior_gram(f, P("x"), find_roots(f));
  EXPECT_EQ(round_to_digits(ig.Qstar, 1), kToyQbar);
  EXPECT_EQ(round_to_digits(ig.qstar, 1), P("-0.4x + 0.3"));
}

TEST(RoundToDigits, MirrorsLowerTriangle) {
  RationalMatrix a = M3({{R(1, 3), R(7, 1000)}, {R(2, 1000), R(1, 7)}});
  const auto r = round_to_digits(a, 2);
  EXPECT_TRUE(r.is_symmetric());
  EXPECT_EQ(r(0, 1), R(0));
  EXPECT_EQ(r(0, 0), R(33, 100));
}

TEST(CheckPositiveDefinite, Examples) {
  const auto ldl = check_positive_definite(kToyQ);
  ASSERT_TRUE(ldl.ok);
  EXPECT_EQ(ldl.D, (std::vector<Rational>{R(3, 5), R(23, 60), R(137, 460)}));
  const auto id = check_positive_definite(RationalMatrix::identity(3, 0, 1));
  ASSERT_TRUE(id.ok);
  EXPECT_EQ(id.L, RationalMatrix::identity(3, 0, 1));
  EXPECT_EQ(id.D, (std::vector<Rational>{1, 1, 1}));
  const auto bad = check_positive_definite(M3({{1, 2}, {2, 1}}));
  EXPECT_FALSE(bad.ok);
  EXPECT_EQ(bad.failing_pivot, 1u);
  EXPECT_EQ(bad.D.back(), -3);
  EXPECT_FALSE(check_positive_definite(M3({{0, 0}, {0, 1}})).ok);
}

TEST(GramToSos, Examples) {
  const Poly f = P("x^3-2"), g = P("x");
  GramLift lift{kToyQ, P("-0.4x+0.3"), f, g};
  ASSERT_EQ(gram_poly(lift.Q) + lift.q * f, g);
  const auto sos = gram_to_sos(lift);
  EXPECT_EQ(sos.weights, (std::vector<Rational>{R(3, 5), R(23, 60), R(137, 460)}));
  ASSERT_EQ(sos.polys.size(), 3u);
  EXPECT_EQ(sos.polys[0], P("1 + 1/6*x - 1/3*x^2"));
  EXPECT_EQ(sos.polys[1], P("x - 7/23*x^2"));
  EXPECT_EQ(sos.polys[2], P("x^2"));
  EXPECT_TRUE(sos_congruent(sos, g));

  GramLift id{RationalMatrix::identity(2, 0, 1), Poly(), P("x^2+1"), P("1+x^2")};
  const auto s2 = gram_to_sos(id);
  EXPECT_EQ(s2.weights, (std::vector<Rational>{1, 1}));
  EXPECT_EQ(s2.polys[0], P("1"));
  EXPECT_EQ(s2.polys[1], P("x"));
}

TEST(GramToSos, RandomReconstruction) {
  oracle::Gen gen(41);
  for (int it = 0; it < 100; ++it) {
    const std::size_t n = static_cast<std::size_t>(gen.integer(1, 6));
    const RationalMatrix Q = gen.positive_definite(n, 9);
    const auto sos = gram_to_sos(GramLift{Q, Poly(), Poly::monomial(1, n), gram_poly(Q)});
    // Oracle expansion of sum w h^2.
    oracle::Vec acc;
    for (std::size_t i = 0; i < sos.size(); ++i)
      acc = oracle::add(acc, oracle::scale(oracle::mul(oracle::of(sos.polys[i]), oracle::of(sos.polys[i])),
                                           sos.weights[i]));
    EXPECT_EQ(oracle::to_poly(acc), gram_poly(Q));
  }
}

TEST(CertifyStrict, Examples) {
  const auto c1 = certify_strict_squarefree(P("x^3-2"), P("x"));
  EXPECT_TRUE(check_positive_definite(c1.lift.Q).ok);
  EXPECT_EQ(sos_sum(c1.sos) + c1.lift.q * P("x^3-2"), P("x"));

  // No real roots: -1 is a sum of squares modulo x^2 + 1.
  const auto c2 = certify_strict_squarefree(P("x^2+1"), P("-1"));
  EXPECT_EQ(gram_poly(c2.lift.Q) + c2.lift.q * P("x^2+1"), P("-1"));
  for (const auto& w : c2.sos.weights) EXPECT_GT(w, 0);

  const auto c3 = certify_strict_squarefree(P("x-2"), P("x"));
  EXPECT_EQ(c3.lift.Q, M3({{2}}));
  EXPECT_EQ(c3.lift.q, P("1"));
  EXPECT_EQ(c3.sos.weights, std::vector<Rational>{2});
  EXPECT_EQ(c3.sos.polys, std::vector<Poly>{P("1")});
}

TEST(CertifyStrict, HighDegreeG) {
  const Poly f = P("x^3-2"), g = P("x^7 + 3x^4 + 1");
  const auto c = certify_strict_squarefree(f, g);
  EXPECT_EQ(sos_sum(c.sos) + c.lift.q * f, g);
}

TEST(CertifyStrict, Rejections) {
  try {
    certify_strict_squarefree(P("x^3-2"), P("-x"));
    FAIL();
  } catch (const NotStrictlyPositiveError& e) {
    EXPECT_LT(e.value(), 0);
  }
  try {
    certify_strict_squarefree(P("(x-1)(x+1)"), P("x-1"));  // g vanishes at a root
    FAIL();
  } catch (const NotStrictlyPositiveError& e) {
    EXPECT_NEAR(e.root(), 1.0, 1e-12);
  }
  try {
    certify_strict_squarefree(P("(x-1)^2"), P("1"));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Errc::NotSquarefree);
  }
}

TEST(CertifyStrict, PrecisionExhaustedCarriesResiduals) {
  CertifyOptions opts;
  opts.lambda_factor = 1.0;  // boundary construction: never definite
  opts.max_retries = 1;
  try {
    certify_strict_squarefree(P("x^3-2"), P("x"), opts);
    FAIL();
  } catch (const PrecisionExhaustedError& e) {
    EXPECT_EQ(e.code(), Errc::PrecisionExhausted);
    EXPECT_LE(e.sigma(), 1e-6);
  }
}

TEST(ExactifyProperties, ProjectionIdempotentAndMember) {
  oracle::Gen gen(42);
  for (int it = 0; it < 200; ++it) {
    const std::size_t n = static_cast<std::size_t>(gen.integer(1, 6));
    const RationalMatrix Q = gen.symmetric(n, 100, gen.integer(1, 20));
    const Poly p = gen.poly(static_cast<int>(gen.integer(0, 2 * static_cast<long>(n) - 2)), 100, 9);
    const RationalMatrix R1 = project(Q, p);
    EXPECT_EQ(gram_poly(R1), p);
    EXPECT_EQ(project(R1, p), R1);
    EXPECT_TRUE(R1.is_symmetric());
    // Q - pi(Q) is constant along antidiagonals (a combination of Hankel matrices).
    const RationalMatrix D = Q - R1;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j)
        if (i + 1 < n && j > 0) EXPECT_EQ(D(i, j), D(i + 1, j - 1));
  }
}

TEST(ExactifyProperties, NormBound) {
  oracle::Gen gen(43);
  for (int it = 0; it < 200; ++it) {
    const std::size_t n = static_cast<std::size_t>(gen.integer(1, 6));
    const Poly p = gen.poly(static_cast<int>(gen.integer(0, 2 * static_cast<long>(n) - 2)), 100, 9);
    const RationalMatrix Q = gram_of_poly(p, n);
    Rational frob = 0;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) frob += Q(i, j) * Q(i, j);
    EXPECT_LE(frob, norm2_squared(p));
  }
}

TEST(ExactifyProperties, LdlAgreesWithMinors) {
  oracle::Gen gen(44);
  for (int it = 0; it < 200; ++it) {
    const std::size_t n = static_cast<std::size_t>(gen.integer(1, 6));
    const RationalMatrix Q = gen.integer(0, 1) ? gen.positive_definite(n, 5) : gen.symmetric(n, 10, 3);
    const auto ldl = check_positive_definite(Q);
    bool minors_positive = true;
    for (std::size_t k = 1; k <= n; ++k) minors_positive &= oracle::det(oracle::leading_minor(Q, k)) > 0;
    EXPECT_EQ(ldl.ok, minors_positive);
    if (ldl.ok) {
      RationalMatrix D(n, n, Rational(0));
      for (std::size_t i = 0; i < n; ++i) D(i, i) = ldl.D[i];
      EXPECT_EQ(ldl.L * D * ldl.L.transpose(), Q);
    }
  }
}
