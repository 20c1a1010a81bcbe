#include <gtest/gtest.h>

#include "fixtures.hpp"
#include "pmc/errors.hpp"
#include "pmc/oracle.hpp"

using namespace pmc;

TEST(OracleModels, EmptyAndUnsat) {
  CnfFormula f;
  f.num_vars = 3;
  EXPECT_EQ(oracle::count_models_bruteforce(f), 8);
  f.clauses.emplace_back();
  EXPECT_EQ(oracle::count_models_bruteforce(f), 0);
}

TEST(OracleModels, OverlapFullCount) {
  // Pinned from the exhaustive evaluation over all 32 assignments.
  EXPECT_EQ(oracle::count_models_bruteforce(fixtures::overlap_formula()), 9);
}

TEST(OracleProjected, KnownInstances) {
  EXPECT_EQ(oracle::count_projected_bruteforce(fixtures::six_var()), 4);
  EXPECT_EQ(oracle::count_projected_bruteforce(fixtures::overlap()), 2);
}

TEST(OracleProjected, EmptyFormula) {
  CnfFormula f;
  f.num_vars = 5;
  EXPECT_EQ(oracle::count_projected_bruteforce({f, {1, 2, 3}}), 8);
}

TEST(OracleProjected, FullProjectionIsModelCount) {
  for (std::uint64_t seed = 0; seed < 25; ++seed) {
    auto f = fixtures::random_uf3sat(seed).formula();
    EXPECT_EQ(oracle::count_projected_bruteforce(ProjectedCnf(f)),
              oracle::count_models_bruteforce(f));
  }
}

TEST(OracleProjected, BoundsAndMonotonicity) {
  for (std::uint64_t seed = 0; seed < 25; ++seed) {
    auto pf = fixtures::random_uf3sat(seed);
    auto c = oracle::count_projected_bruteforce(pf);
    EXPECT_GE(c, 0);
    EXPECT_LE(c, pow2(pf.priority().size()));
    auto f = pf.formula();
    f.clauses.push_back(Clause{1, -2});
    ProjectedCnf more(f, {pf.priority().begin(), pf.priority().end()});
    EXPECT_LE(oracle::count_projected_bruteforce(more), c);
    EXPECT_LE(oracle::count_models_bruteforce(f),
              oracle::count_models_bruteforce(pf.formula()));
  }
}

TEST(Oracle, RefusesOverCap) {
  CnfFormula f;
  f.num_vars = 30;
  EXPECT_THROW(oracle::count_models_bruteforce(f), LimitExceeded);
  EXPECT_THROW(oracle::count_projected_bruteforce(ProjectedCnf(f)), LimitExceeded);
  EXPECT_EQ(oracle::count_models_bruteforce(f, 30), pow2(30));
}

TEST(Oracle, Satisfies) {
  auto f = fixtures::overlap_formula();
  // p q x y z = 1 1 0 0 0
  EXPECT_TRUE(oracle::satisfies(f, {0, 1, 1, 0, 0, 0}));
  EXPECT_FALSE(oracle::satisfies(f, {0, 0, 1, 0, 0, 0}));
}
