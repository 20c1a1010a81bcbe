#include <gtest/gtest.h>

#include <algorithm>

#include "fixtures.hpp"
#include "pmc/counter.hpp"
#include "pmc/errors.hpp"
#include "pmc/oracle.hpp"

using namespace pmc;

namespace {

Component comp(std::vector<Var> vars, std::vector<Clause> clauses) {
  return {std::move(vars), std::move(clauses)};
}

bool same(const Component &a, const Component &b) {
  return ComponentKey::of(a) == ComponentKey::of(b);
}

} // namespace

TEST(Decompose, SixVarUnderP) {
  // p=1 q=2 r=3 x=4 y=5 z=6; residual under {p}.
  auto c = comp({2, 3, 4, 5, 6},
                {{-2, 4}, {-3, -5, 6}, {3, -6}, {6, 5, 3}, {3, 6, -5}});
  auto parts = decompose(c);
  ASSERT_EQ(parts.size(), 2u);
  EXPECT_TRUE(same(parts[0], comp({2, 4}, {{-2, 4}})));
  EXPECT_TRUE(same(parts[1], comp({3, 5, 6}, {{-3, -5, 6}, {3, -6}, {6, 5, 3},
                                              {3, 6, -5}})));
}

TEST(Decompose, SixVarUnderNotP) {
  // After ~p and the propagated q: C6 = ({x}, {}) and C7 = ({r,y,z}, ...).
  auto c = comp({3, 4, 5, 6}, {{-3, -5, 6}});
  auto parts = decompose(c);
  ASSERT_EQ(parts.size(), 2u);
  EXPECT_TRUE(same(parts[0], comp({3, 5, 6}, {{-3, -5, 6}})));
  EXPECT_TRUE(same(parts[1], comp({4}, {})));
}

TEST(Decompose, ClauseFreeVariablesAreSingletons) {
  auto parts = decompose(comp({1, 2}, {}));
  ASSERT_EQ(parts.size(), 2u);
  EXPECT_EQ(parts[0].vars, std::vector<Var>{1});
  EXPECT_EQ(parts[1].vars, std::vector<Var>{2});
}

TEST(ComponentKey, OrderInsensitive) {
  auto a = comp({1, 2, 3}, {{1, 2}, {-2, 3}});
  auto b = comp({1, 2, 3}, {{3, -2}, {2, 1}});
  EXPECT_EQ(ComponentKey::of(a), ComponentKey::of(b));
  EXPECT_EQ(ComponentKey::of(a).hash, ComponentKey::of(b).hash);
  EXPECT_FALSE(ComponentKey::of(a) == ComponentKey::of(comp({1, 2, 3}, {{1, 2}})));
  EXPECT_FALSE(ComponentKey::of(a) == ComponentKey::of(comp({1, 2, 3, 4}, a.clauses)));
}

TEST(ComponentCache, LookupAndStore) {
  ComponentCache cache;
  auto key = ComponentKey::of(comp({1, 2}, {{1, 2}}));
  EXPECT_EQ(cache.lookup(key), nullptr);
  cache.store(key, {3, std::nullopt});
  ASSERT_NE(cache.lookup(key), nullptr);
  EXPECT_EQ(cache.lookup(key)->count, 3);
  cache.store(key, {3, std::nullopt});
  EXPECT_EQ(cache.size(), 1u);
}

TEST(ComponentCache, EvictsLeastRecentlyUsed) {
  auto k1 = ComponentKey::of(comp({1, 2}, {{1, 2}}));
  auto k2 = ComponentKey::of(comp({3, 4}, {{3, 4}}));
  auto k3 = ComponentKey::of(comp({5, 6}, {{5, 6}}));
  ComponentCache probe;
  probe.store(k1, {1, std::nullopt});
  const std::size_t one = probe.bytes();
  ComponentCache cache(2 * one + one / 2);
  cache.store(k1, {1, std::nullopt});
  cache.store(k2, {2, std::nullopt});
  ASSERT_NE(cache.lookup(k1), nullptr); // k2 is now the oldest
  cache.store(k3, {3, std::nullopt});
  EXPECT_EQ(cache.evictions(), 1u);
  EXPECT_EQ(cache.lookup(k2), nullptr);
  EXPECT_NE(cache.lookup(k1), nullptr);
  EXPECT_NE(cache.lookup(k3), nullptr);
}

TEST(CountProjected, SixVar) {
  auto r = count_projected(fixtures::six_var());
  EXPECT_EQ(r.count, 4);
  EXPECT_GT(r.stats.decisions, 0u);
}

TEST(CountProjected, SixVarTraceSubCounts) {
  std::vector<std::pair<Component, BigCount>> seen;
  std::vector<std::pair<Component, BigCount>> hits;
  CounterOptions opts;
  opts.on_component = [&](const Component &c, const BigCount &n, bool cached) {
    (cached ? hits : seen).emplace_back(c, n);
  };
  EXPECT_EQ(count_projected(fixtures::six_var(), opts).count, 4);

  auto count_of = [&](const Component &want) -> std::optional<BigCount> {
    for (const auto &[c, n] : seen)
      if (same(c, want))
        return n;
    return std::nullopt;
  };
  auto c1 = comp({2, 4}, {{-2, 4}});
  auto c2 = comp({3, 5, 6}, {{-3, -5, 6}, {3, -6}, {6, 5, 3}, {3, 6, -5}});
  auto c7 = comp({3, 5, 6}, {{-3, -5, 6}});
  EXPECT_EQ(count_of(c1), BigCount(2));
  EXPECT_EQ(count_of(c2), BigCount(1));
  EXPECT_EQ(count_of(c7), BigCount(2));

  // Under r in C7 the residual ({y,z}, {(~y,z)}) was already met under r in
  // C2 and is served from the cache with count 1.
  auto again = comp({5, 6}, {{-5, 6}});
  bool found = false;
  for (const auto &[c, n] : hits)
    if (same(c, again)) {
      found = true;
      EXPECT_EQ(n, 1);
    }
  EXPECT_TRUE(found);
}

TEST(CountProjected, EmptyFormulaIsPowerOfTwo) {
  for (Var k : {0u, 1u, 5u, 70u}) {
    CnfFormula f;
    f.num_vars = 80;
    auto prio = fixtures::all_vars(k);
    EXPECT_EQ(count_projected({f, prio}).count, pow2(k));
  }
}

TEST(CountProjected, UnsatAndEmptyClause) {
  CnfFormula f;
  f.num_vars = 2;
  f.clauses = {{1}, {-1}};
  EXPECT_EQ(count_projected(ProjectedCnf(f)).count, 0);
  f.clauses = {Clause{}};
  EXPECT_EQ(count_projected(ProjectedCnf(f)).count, 0);
}

TEST(CountProjected, MatchesOracleOnRandomInstances) {
  for (std::uint64_t seed = 0; seed < 50; ++seed) {
    auto pf = fixtures::random_uf3sat(seed);
    auto expected = oracle::count_projected_bruteforce(pf);
    EXPECT_EQ(count_projected(pf).count, expected) << "seed " << seed;
    CounterOptions no_cache;
    no_cache.caching = false;
    EXPECT_EQ(count_projected(pf, no_cache).count, expected) << "seed " << seed;
    CounterOptions learning;
    learning.learning = true;
    EXPECT_EQ(count_projected(pf, learning).count, expected) << "seed " << seed;
  }
}

TEST(CountProjected, FullProjectionIsSharpSat) {
  for (std::uint64_t seed = 0; seed < 30; ++seed) {
    auto f = fixtures::random_uf3sat(seed).formula();
    EXPECT_EQ(count_projected(ProjectedCnf(f)).count,
              oracle::count_models_bruteforce(f));
  }
}

TEST(CountProjected, TinyCacheStillExact) {
  CounterOptions opts;
  opts.cache_bytes = 600;
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    auto pf = fixtures::random_uf3sat(seed);
    EXPECT_EQ(count_projected(pf, opts).count,
              oracle::count_projected_bruteforce(pf));
  }
}

TEST(CountProjected, NonPriorityComponentsCountZeroOrOne) {
  std::vector<Var> priority{1, 2, 3};
  CounterOptions opts;
  opts.on_component = [&](const Component &c, const BigCount &n, bool) {
    bool has_priority = std::any_of(c.vars.begin(), c.vars.end(),
                                    [](Var v) { return v <= 3; });
    if (!has_priority)
      EXPECT_LE(n, 1);
  };
  count_projected(fixtures::six_var(), opts);
}

TEST(CountProjected, DeadlineThrows) {
  auto pf = gen_uf3sat(250, 1065, 250, 1);
  CounterOptions opts;
  opts.deadline = Deadline(std::chrono::milliseconds(20));
  EXPECT_THROW(count_projected(pf, opts), LimitExceeded);
}

TEST(CompileDdnnf, SingleUnit) {
  CnfFormula f;
  f.num_vars = 1;
  f.clauses = {{1}};
  auto g = compile_ddnnf(f);
  ASSERT_EQ(g.size(), 1u);
  EXPECT_EQ(g.node(0).kind, NnfKind::Literal);
  EXPECT_EQ(g.node(0).lit, Lit::from_dimacs(1));
}

TEST(CompileDdnnf, UnsatAndEmpty) {
  CnfFormula f;
  f.num_vars = 1;
  f.clauses = {{1}, {-1}};
  auto g = compile_ddnnf(f);
  EXPECT_EQ(g.node(g.root()).kind, NnfKind::False);
  EXPECT_EQ(count_ddnnf(g), 0);
  CnfFormula empty;
  empty.num_vars = 3;
  auto t = compile_ddnnf(empty);
  EXPECT_EQ(t.node(t.root()).kind, NnfKind::True);
  EXPECT_EQ(count_ddnnf(t), 8);
}

TEST(CompileDdnnf, OverlapCountsAllModels) {
  auto g = compile_ddnnf(fixtures::overlap_formula());
  EXPECT_TRUE(check_decomposable(g));
  EXPECT_TRUE(check_deterministic(g));
  EXPECT_EQ(count_ddnnf(g), oracle::count_models_bruteforce(fixtures::overlap_formula()));
}

TEST(CompileDdnnf, StructuralAndEquivalentOnRandomInstances) {
  for (std::uint64_t seed = 0; seed < 40; ++seed) {
    auto f = fixtures::random_uf3sat(seed).formula();
    auto g = compile_ddnnf(f);
    auto dec = check_decomposable(g);
    auto det = check_deterministic(g);
    EXPECT_TRUE(dec) << dec.detail;
    EXPECT_TRUE(det) << det.detail;
    EXPECT_EQ(count_ddnnf(g), oracle::count_models_bruteforce(f));
    // Logical equivalence on every assignment.
    for (std::uint64_t a = 0; a < (std::uint64_t{1} << f.num_vars); a += 7) {
      std::vector<char> values(f.num_vars + 1, 0);
      for (Var v = 1; v <= f.num_vars; ++v)
        values[v] = (a >> (v - 1)) & 1;
      ASSERT_EQ(evaluate(g, values), oracle::satisfies(f, values));
    }
  }
}
