#include <gtest/gtest.h>

#include "properties.hpp"

namespace {

void expect_ok(const props::Outcome& o) {
  EXPECT_GE(o.instances, props::kInstances) << o.name;
  EXPECT_EQ(o.failures, 0) << o.name << ": " << o.first_failure;
}

}  // namespace

TEST(Properties, ProjectionIdempotenceAndMembership) { expect_ok(props::projection()); }
TEST(Properties, GramNormBound) { expect_ok(props::norm_bound()); }
TEST(Properties, LdlReconstruction) { expect_ok(props::ldl_reconstruction()); }
TEST(Properties, FactorizationReconstruction) { expect_ok(props::factorization()); }
TEST(Properties, HenselStepInvariant) { expect_ok(props::hensel_invariant()); }
TEST(Properties, CrtCongruence) { expect_ok(props::crt_congruence()); }
TEST(Properties, EmittedCertificatesVerify) { expect_ok(props::pipeline()); }

// Different seeds exercise different instances of the same invariants.
TEST(Properties, AlternateSeeds) {
  expect_ok(props::projection(7001));
  expect_ok(props::hensel_invariant(7005));
  expect_ok(props::crt_congruence(7006));
}
