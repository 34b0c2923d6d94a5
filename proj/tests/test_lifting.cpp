#include <gtest/gtest.h>

#include <cmath>

#include "oracles.hpp"
#include "sosq/lifting.hpp"
#include "sosq/parse.hpp"

using namespace sosq;

namespace {

Poly P(const char* s) { return parse_poly(s); }
Rational R(long n, long d = 1) { return make_rational(n, d); }

SOSDecomposition toy_sos() {
  return {{R(3, 5), R(23, 60), R(137, 460)}, {P("1 + 1/6*x - 1/3*x^2"), P("x - 7/23*x^2"), P("x^2")}, P("x^3-2")};
}

/// Oracle congruence: (sum w h^2 - g) mod m by schoolbook division.
bool congruent(const std::vector<Rational>& w, const std::vector<Poly>& h, const Poly& g, const Poly& m) {
  oracle::Vec acc = oracle::of(g);
  for (std::size_t i = 0; i < w.size(); ++i)
    acc = oracle::sub(acc, oracle::scale(oracle::mul(oracle::of(h[i]), oracle::of(h[i])), w[i]));
  return oracle::divmod(acc, oracle::of(m)).second.empty();
}

}  // namespace

TEST(HenselLiftSos, Examples) {
  const Poly p = P("x^3-2"), g = P("x");
  const auto lifted = hensel_lift_sos(toy_sos(), p, 2, g);
  EXPECT_EQ(lifted.weights, toy_sos().weights);
  EXPECT_EQ(lifted.polys[0], toy_sos().polys[0]);
  EXPECT_EQ(lifted.polys[1], toy_sos().polys[1]);
  EXPECT_EQ(lifted.polys[2], P("-46/137*x^5 + 69/274*x^4 + 229/137*x^2 - 69/137*x"));
  EXPECT_TRUE(congruent(lifted.weights, lifted.polys, g, P("(x^3-2)^2")));
  EXPECT_EQ(lifted.modulus, P("(x^3-2)^2"));

  const auto same = hensel_lift_sos(toy_sos(), p, 1, g);
  EXPECT_EQ(same.polys, toy_sos().polys);

  SOSDecomposition four{{R(1)}, {P("2")}, P("x-1")};
  const auto l4 = hensel_lift_sos(four, P("x-1"), 4, P("4"));
  EXPECT_EQ(l4.polys, std::vector<Poly>{P("2")});
}

TEST(HenselLiftSos, IterationCountAndInvariant) {
  const Poly p = P("x^3-2"), g = P("x");
  for (unsigned e : {2u, 3u, 4u, 5u, 8u}) {
    std::vector<Poly> its;
    const auto lifted = hensel_lift_sos(toy_sos(), p, e, g, &its);
    const unsigned k = static_cast<unsigned>(std::ceil(std::log2(static_cast<double>(e))));
    EXPECT_EQ(its.size(), k + 1);
    EXPECT_TRUE(congruent(lifted.weights, lifted.polys, g, pow(p, e)));
    for (const auto& h : lifted.polys) EXPECT_LT(h.degree(), Degree(3 * static_cast<long>(e)));
  }
}

TEST(HenselLiftSos, Errors) {
  const Poly p = P("x^3-2");
  SOSDecomposition none{{R(1)}, {P("x^3-2")}, p};
  try {
    hensel_lift_sos(none, p, 2, Poly());
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Errc::NoInvertibleSquare);
  }
  // x^2 - 1 is reducible; the square x - 1 shares a proper factor with it.
  SOSDecomposition red{{R(1)}, {P("x-1")}, P("x^2-1")};
  try {
    hensel_lift_sos(red, P("x^2-1"), 2, P("(x-1)^2"));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Errc::NotIrreducible);
  }
}

TEST(CrtCombine, Examples) {
  const SOSDecomposition one{{R(1)}, {P("1")}, P("x-3")};
  const auto single = crt_combine_sos({{P("x-3"), one}}, P("1"));
  EXPECT_EQ(single.polys, std::vector<Poly>{P("1")});

  // g = 1 modulo x and x - 1.
  const auto c1 = crt_combine_sos({{P("x"), {{R(1)}, {P("1")}, P("x")}}, {P("x-1"), {{R(1)}, {P("1")}, P("x-1")}}},
                                  P("1"));
  EXPECT_EQ(c1.size(), 2u);
  EXPECT_TRUE(congruent(c1.weights, c1.polys, P("1"), P("x(x-1)")));

  // g = x modulo x - 1 and x - 4: values at 1 and 4 must be 1 and 4.
  const auto c2 = crt_combine_sos(
      {{P("x-1"), {{R(1)}, {P("1")}, P("x-1")}}, {P("x-4"), {{R(1)}, {P("2")}, P("x-4")}}}, P("x"));
  Poly s = sos_sum(c2);
  EXPECT_EQ(s(R(1)), 1);
  EXPECT_EQ(s(R(4)), 4);
  for (const auto& h : c2.polys) EXPECT_LT(h.degree(), Degree(2));

  try {
    crt_combine_sos({{P("x-1"), one}, {P("x^2-1"), one}}, P("1"));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Errc::NotCoprime);
  }
}

TEST(ReduceNonnegToStrict, Examples) {
  const auto r = reduce_nonneg_to_strict(P("x*(x^3-2)^2"), P("x^3"));
  EXPECT_EQ(r.d, P("x"));
  EXPECT_EQ(r.cofactor, P("(x^3-2)^2"));
  EXPECT_EQ(r.b, P("x"));

  try {
    reduce_nonneg_to_strict(P("x^2"), P("x"));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Errc::HypothesisViolated);
  }
  const auto c = reduce_nonneg_to_strict(P("x^3-2"), P("x^4+1"));
  EXPECT_EQ(c.d, P("1"));
  EXPECT_EQ(c.b, rem(P("x^4+1"), P("x^3-2")));
  try {
    reduce_nonneg_to_strict(P("x"), Poly());
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Errc::ZeroG);
  }
  // gcd oracle: (x-1)^2 with itself shares x - 1 between d and f/d.
  try {
    reduce_nonneg_to_strict(P("(x-1)^2"), P("(x-1)^2"));
    SUCCEED();  // d = f, cofactor 1: nothing shared
  } catch (const Error&) {
    FAIL();
  }
}

TEST(ReduceNonnegToStrict, PositivityTransfer) {
  oracle::Gen gen(51);
  int done = 0;
  for (int it = 0; it < 400 && done < 60; ++it) {
    const Poly d = gen.poly(static_cast<int>(gen.integer(1, 2)), 6);
    const Poly c = gen.poly(static_cast<int>(gen.integer(1, 4)), 6);
    if (!gcd(d, c).is_constant() || !is_squarefree(c)) continue;
    const Poly f = d * c;
    const Poly h = gen.poly(static_cast<int>(gen.integer(0, 3)), 6);
    const Poly g = d * d * (h * h + P("1"));
    StrictReduction r;
    try {
      r = reduce_nonneg_to_strict(f, g);
    } catch (const Error& e) {
      ASSERT_EQ(e.code(), Errc::HypothesisViolated);
      continue;
    }
    if (r.cofactor.is_constant() || sturm_real_root_count(r.cofactor) == 0) continue;
    const auto roots = find_roots(r.cofactor);
    for (const auto& x : roots.real_roots) {
      const double xi = x.to_double();
      const double b = oracle::eval_d(oracle::of(r.b), xi);
      const double dd = oracle::eval_d(oracle::of(r.d), xi);
      const double gv = oracle::eval_d(oracle::of(g), xi);
      EXPECT_NEAR(b * dd * dd, gv, 1e-7 * (1 + std::fabs(gv)));
      EXPECT_GT(b, 0.0);
    }
    ++done;
  }
  EXPECT_GE(done, 20);
}

TEST(CertifyNonnegative, Examples) {
  const Poly f = P("x*(x^3-2)^2"), g = P("x^3");
  const Certificate c = certify_nonnegative(f, g);
  EXPECT_TRUE(verify(c).valid);
  ASSERT_EQ(c.polys.size(), 3u);
  for (const auto& h : c.polys) {
    EXPECT_LT(h.degree(), Degree(7));
    EXPECT_TRUE(rem(h, P("x")).is_zero());
  }
  try {
    certify_nonnegative(P("(x-1)^2"), P("(x-1)"));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Errc::HypothesisViolated);
  }
}

TEST(CertifyNonnegative, SquarefreeMatchesStrict) {
  const Poly f = P("(x^2-2)(x^2+1)"), g = P("x^2 + x + 1");
  const Certificate c = certify_nonnegative(f, g);
  EXPECT_TRUE(verify(c).valid);
  // Per-factor strict certificates recombine into the same number of terms.
  const auto a = certify_strict_squarefree(P("x^2-2"), rem(g, P("x^2-2")));
  const auto b = certify_strict_squarefree(P("x^2+1"), rem(g, P("x^2+1")));
  EXPECT_EQ(c.weights.size(), a.sos.size() + b.sos.size());
  std::vector<Rational> w = a.sos.weights;
  w.insert(w.end(), b.sos.weights.begin(), b.sos.weights.end());
  EXPECT_EQ(c.weights, w);
}

TEST(CertifyNonnegative, DegenerateInputs) {
  const Certificate zero = certify_nonnegative(P("x^2-2"), Poly());
  EXPECT_TRUE(zero.weights.empty());
  EXPECT_TRUE(zero.q.is_zero());
  EXPECT_TRUE(verify(zero).valid);

  const Certificate mult = certify_nonnegative(P("x-1"), P("(x-1)(x+5)"));
  EXPECT_TRUE(mult.weights.empty());
  EXPECT_EQ(mult.q, P("x+5"));
  EXPECT_TRUE(verify(mult).valid);
}

TEST(CertifyNonnegative, NegativeReportsEvidence) {
  try {
    certify_nonnegative(P("x*(x^2-2)"), P("x - 1"));
    FAIL();
  } catch (const NotNonnegativeError& e) {
    EXPECT_EQ(e.code(), Errc::NotNonnegative);
    EXPECT_LT(e.value(), 0.0);
    EXPECT_LT(std::fabs(oracle::eval_d(oracle::of(e.factor()), e.root())), 1e-9);
  }
}

TEST(CertifyNonnegative, SequentialAndParallelAgree) {
  const Poly f = P("(x^2-2)(x^3-3)(x^2+x+1)(x+7)"), g = P("x^2+1");
  CertifyOptions seq;
  seq.parallel = false;
  EXPECT_EQ(certify_nonnegative(f, g, seq), certify_nonnegative(f, g));
}
