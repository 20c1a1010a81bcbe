#include <gtest/gtest.h>

#include "fixtures.hpp"
#include "pmc/blocking.hpp"
#include "pmc/errors.hpp"
#include "pmc/oracle.hpp"

using namespace pmc;

namespace {

std::vector<Assignment> cubes_of(const EnumResult &r) {
  std::vector<Assignment> out;
  for (const auto &c : r.cubes)
    out.push_back(c.cube);
  return out;
}

} // namespace

// p=1 q=2 r=3 x=4 y=5 z=6 throughout.

TEST(Shrink, FirstSolutionOfWorkedRun) {
  auto pf = fixtures::six_var();
  auto freq = literal_frequencies(pf.formula());
  Assignment theta{1, -2, 4, 6, 3, -5};
  auto s = shrink(theta, pf.formula().clauses, {}, {}, pf, freq);
  EXPECT_EQ(s, (Assignment{3, 1}));
}

TEST(Shrink, BlockingClausesMustBeHit) {
  auto pf = fixtures::six_var();
  auto freq = literal_frequencies(pf.formula());
  Assignment theta{3, -1, 2, -5, 6, 4};
  std::vector<Lit> controlled{Lit::from_dimacs(3)};
  std::vector<Clause> blocking{{-3, -1}};
  auto s = shrink(theta, pf.formula().clauses, blocking, controlled, pf, freq);
  EXPECT_EQ(s, (Assignment{3, -1, 2}));
  auto wrong = shrink(theta, pf.formula().clauses, {}, controlled, pf, freq);
  EXPECT_EQ(wrong, (Assignment{3, 2}));
}

TEST(Shrink, SingleClause) {
  CnfFormula f;
  f.num_vars = 2;
  f.clauses = {{1}};
  ProjectedCnf pf(f, {1, 2});
  auto s = shrink(Assignment{1, 2}, f.clauses, {}, {}, pf, literal_frequencies(f));
  EXPECT_EQ(s, (Assignment{1}));
  EXPECT_EQ(projected_cube_size(pf, s), 2);
}

TEST(Shrink, RejectsNonModel) {
  auto pf = fixtures::six_var();
  Assignment theta{-1, -2, 3, 4, 5, 6};
  EXPECT_THROW(shrink(theta, pf.formula().clauses, {}, {}, pf,
                      literal_frequencies(pf.formula())),
               InternalError);
}

TEST(Shrink, TiesGoToSmallerVariable) {
  CnfFormula f;
  f.num_vars = 3;
  f.clauses = {{2, 3}, {1, 3}, {1, 2}};
  ProjectedCnf pf(f);
  auto s = shrink(Assignment{1, 2, 3}, f.clauses, {}, {}, pf,
                  literal_frequencies(f));
  EXPECT_EQ(s, (Assignment{1, 2}));
}

TEST(PickControlled, MostFrequentUnassigned) {
  auto pf = fixtures::six_var();
  auto freq = literal_frequencies(pf.formula());
  cdcl::SolverCore core(6);
  EXPECT_EQ(pick_controlled_literal(Assignment{3, 1}, core, freq),
            Lit::from_dimacs(3));
  core.decide(Lit::from_dimacs(3));
  EXPECT_EQ(pick_controlled_literal(Assignment{3, 1}, core, freq),
            Lit::from_dimacs(1));
  core.decide(Lit::from_dimacs(1));
  EXPECT_EQ(pick_controlled_literal(Assignment{3, 1}, core, freq), std::nullopt);
  EXPECT_EQ(pick_controlled_literal(Assignment{}, core, freq), std::nullopt);
  cdcl::SolverCore fresh(6);
  EXPECT_EQ(pick_controlled_literal(Assignment{1}, fresh, freq),
            Lit::from_dimacs(1));
}

TEST(EnumerateCount, SixVarCubeSizes) {
  EnumOptions opts;
  opts.record_cubes = true;
  auto pf = fixtures::six_var();
  auto r = enumerate_count(pf, opts);
  EXPECT_EQ(r.count, 4);
  std::vector<BigCount> sizes;
  for (const auto &c : r.cubes)
    sizes.push_back(projected_cube_size(pf, c.cube));
  EXPECT_EQ(sizes, (std::vector<BigCount>{2, 1, 1}));
}

// Free search seeded so its first model is {p, -q, x, z, r, -y}.
TEST(EnumerateCount, SixVarWorkedRun) {
  EnumOptions opts;
  opts.record_cubes = true;
  for (int l : {1, -2, 4, 6, 3, -5})
    opts.phase_hints.push_back(Lit::from_dimacs(l));
  auto r = enumerate_count(fixtures::six_var(), opts);
  EXPECT_EQ(r.count, 4);
  EXPECT_EQ(cubes_of(r), (std::vector<Assignment>{
                             Assignment{3, 1}, Assignment{3, -1, 2},
                             Assignment{-3, -1, 2}}));
  EXPECT_EQ(r.stats.num_cubes, 3u);
  EXPECT_LE(r.stats.max_live_blocking, 3u);
}

TEST(EnumerateCount, SixVarWithoutMinimization) {
  EnumOptions opts;
  opts.minimize = false;
  auto r = enumerate_count(fixtures::six_var(), opts);
  EXPECT_EQ(r.count, 4);
  EXPECT_EQ(r.stats.num_cubes, 4u);
  EXPECT_EQ(r.stats.r, 0.0);
}

TEST(EnumerateCount, Unsatisfiable) {
  CnfFormula f;
  f.num_vars = 2;
  f.clauses = {{1, 2}, {-1, 2}, {1, -2}, {-1, -2}};
  for (bool minimize : {true, false}) {
    EnumOptions opts;
    opts.minimize = minimize;
    auto r = enumerate_count(ProjectedCnf(f), opts);
    EXPECT_EQ(r.count, 0);
    EXPECT_EQ(r.stats.num_cubes, 0u);
  }
}

TEST(EnumerateCount, EmptyPriority) {
  auto f = fixtures::six_var_formula();
  auto r = enumerate_count({f, {}});
  EXPECT_EQ(r.count, 1);
}

TEST(EnumerateCount, RStatistic) {
  CnfFormula f;
  f.num_vars = 10;
  auto pf = ProjectedCnf(f);
  auto a = enumerate_count(pf);
  EXPECT_EQ(a.count, 1024);
  EXPECT_EQ(a.stats.num_cubes, 1u);
  EXPECT_DOUBLE_EQ(a.stats.r, 10.0);
  EnumOptions plain;
  plain.minimize = false;
  auto b = enumerate_count(pf, plain);
  EXPECT_EQ(b.count, 1024);
  EXPECT_EQ(b.stats.num_cubes, 1024u);
  EXPECT_DOUBLE_EQ(b.stats.r, 0.0);
}

TEST(EnumerateCount, MatchesOracleAndKeepsSpaceBound) {
  for (std::uint64_t seed = 0; seed < 50; ++seed) {
    auto pf = fixtures::random_uf3sat(seed);
    auto expected = oracle::count_projected_bruteforce(pf);
    for (bool minimize : {true, false}) {
      EnumOptions opts;
      opts.minimize = minimize;
      opts.cdcl.restart_unit = 3;
      opts.cdcl.learned_limit = 5;
      auto r = enumerate_count(pf, opts);
      EXPECT_EQ(r.count, expected) << "seed " << seed << " minimize " << minimize;
      EXPECT_LE(r.stats.max_live_blocking, pf.priority().size());
      if (r.stats.num_cubes > 0) {
        EXPECT_GE(r.stats.r, 0.0);
        EXPECT_LE(r.stats.r, static_cast<double>(pf.priority().size()));
      }
    }
  }
}

TEST(EnumerateCount, CubesAreValidAndDisjoint) {
  for (std::uint64_t seed = 0; seed < 30; ++seed) {
    auto pf = fixtures::random_uf3sat(seed);
    EnumOptions opts;
    opts.record_cubes = true;
    auto r = enumerate_count(pf, opts);
    BigCount total = 0;
    for (std::size_t i = 0; i < r.cubes.size(); ++i) {
      const auto &s = r.cubes[i].cube;
      total += projected_cube_size(pf, s);
      // A cube together with its non-priority witness makes F a cube.
      EXPECT_TRUE(is_cube(pf.formula(), s.merged(r.cubes[i].non_priority)));
      for (std::size_t j = 0; j < i; ++j) {
        bool clash = false;
        for (Lit l : s)
          clash = clash || r.cubes[j].cube.contains(~l);
        EXPECT_TRUE(clash) << "cubes " << j << " and " << i << " overlap";
      }
    }
    EXPECT_EQ(total, r.count);
  }
}

TEST(EnumerateCount, DeadlineThrows) {
  auto pf = gen_uf3sat(200, 400, 200, 3);
  EnumOptions opts;
  opts.minimize = false;
  opts.deadline = Deadline(std::chrono::milliseconds(20));
  EXPECT_THROW(enumerate_count(pf, opts), LimitExceeded);
}
