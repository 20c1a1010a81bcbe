#include <gtest/gtest.h>

#include "fixtures.hpp"
#include "pmc/errors.hpp"
#include "pmc/nnf.hpp"
#include "pmc/oracle.hpp"

using namespace pmc;

namespace {

std::vector<Lit> lits(std::initializer_list<int> xs) {
  std::vector<Lit> out;
  for (int x : xs)
    out.push_back(Lit::from_dimacs(x));
  return out;
}

} // namespace

TEST(ParseNnf, SingleLiteral) {
  auto g = parse_nnf("nnf 1 0 1\nL 1\n");
  ASSERT_EQ(g.size(), 1u);
  EXPECT_EQ(g.node(0).kind, NnfKind::Literal);
  EXPECT_EQ(count_ddnnf(g), 1);
}

TEST(ParseNnf, OverlapShape) {
  auto g = parse_nnf(fixtures::kOverlapNnf);
  EXPECT_EQ(g.size(), 12u);
  EXPECT_EQ(g.num_edges(), 13u);
  EXPECT_EQ(g.num_vars(), 5u);
  std::size_t literals = 0, ands = 0, ors = 0;
  for (const auto &n : g.nodes()) {
    literals += n.kind == NnfKind::Literal;
    ands += n.kind == NnfKind::And;
    ors += n.kind == NnfKind::Or;
  }
  EXPECT_EQ(literals, 7u);
  EXPECT_EQ(ands, 3u);
  EXPECT_EQ(ors, 2u);
  EXPECT_EQ(g.node(g.root()).decision_var, 3u);
}

TEST(ParseNnf, Errors) {
  auto expect_node_error = [](const char *text, const char *needle) {
    try {
      parse_nnf(text);
      ADD_FAILURE() << "expected ParseError for: " << text;
    } catch (const ParseError &e) {
      EXPECT_NE(std::string(e.what()).find(needle), std::string::npos) << e.what();
    }
  };
  expect_node_error("nnf 2 1 1\nA 1 1\nL 1\n", "node 0");
  expect_node_error("nnf 2 1 1\nL 1\nA 1 1\n", "node 1");
  expect_node_error("nnf 3 0 1\nL 1\nL -1\n", "nodes");
  expect_node_error("nnf 2 5 1\nL 1\nA 1 0\n", "edges");
  EXPECT_THROW(parse_nnf("nnf 1 0 1\nL 2\n"), ParseError);
  EXPECT_THROW(parse_nnf("L 1\n"), ParseError);
}

TEST(WriteNnf, RoundTrip) {
  auto g = parse_nnf(fixtures::kOverlapNnf);
  EXPECT_EQ(to_nnf(g), fixtures::kOverlapNnf);
  auto t = parse_nnf("nnf 3 1 0\nA 0\nO 0 0\nA 1 0\n");
  EXPECT_EQ(to_nnf(t), "nnf 3 1 0\nA 0\nO 0 0\nA 1 0\n");
}

TEST(CountDdnnf, OverlapIsFullCount) {
  auto g = parse_nnf(fixtures::kOverlapNnf);
  EXPECT_TRUE(check_decomposable(g));
  EXPECT_TRUE(check_deterministic(g));
  EXPECT_EQ(count_ddnnf(g), oracle::count_models_bruteforce(fixtures::overlap_formula()));
}

TEST(CountDdnnf, ProbabilityIsDyadic) {
  auto g = parse_nnf(fixtures::kOverlapNnf);
  auto p = satisfaction_probability(g);
  EXPECT_EQ(p.numerator, 9);
  EXPECT_EQ(p.exponent, 5u);
  EXPECT_EQ(count_ddnnf(g, 7), 36);
}

TEST(CountDdnnf, NonIntegralIsDiagnosed) {
  // A single literal has probability 1/2; over an empty universe that is
  // not an integer.
  auto g = parse_nnf("nnf 1 0 1\nL 1\n");
  EXPECT_THROW(count_ddnnf(g, 0), InternalError);
}

TEST(Project, OverlapGivesOverlappingDnnf) {
  auto g = parse_nnf(fixtures::kOverlapNnf);
  std::vector<Var> p{1, 2};
  auto proj = project(g, p);
  // q, ~q, p as literals; a1 = OR(~q,q), a2 = AND(p,a1), a3 = AND(p,q),
  // a4 = OR(a2,a3).
  std::size_t literals = 0, internal = 0;
  for (const auto &n : proj.nodes()) {
    if (n.kind == NnfKind::Literal)
      ++literals;
    else
      ++internal;
  }
  EXPECT_EQ(literals, 3u);
  EXPECT_EQ(internal, 4u);
  const auto &root = proj.node(proj.root());
  EXPECT_EQ(root.kind, NnfKind::Or);
  EXPECT_TRUE(check_decomposable(proj));
  EXPECT_FALSE(check_deterministic(proj));
  // Treated as deterministic: 2^2 * 3/4 = 3, one more than the true count.
  EXPECT_EQ(count_ddnnf(proj, 2), 3);
}

TEST(Project, AllAndNothing) {
  auto g = parse_nnf(fixtures::kOverlapNnf);
  auto all = fixtures::all_vars(5);
  auto same = project(g, all);
  EXPECT_EQ(to_nnf(same), to_nnf(g));
  auto none = project(g, std::vector<Var>{});
  EXPECT_EQ(none.size(), 1u);
  EXPECT_EQ(none.node(0).kind, NnfKind::True);
}

TEST(Project, KeepsDecomposabilityOnCompiledGraphs) {
  auto t = parse_nnf("nnf 5 4 3\nL 1\nL 2\nA 2 0 1\nL 3\nA 2 2 3\n");
  auto p = project(t, std::vector<Var>{1, 3});
  EXPECT_TRUE(check_decomposable(p));
  EXPECT_EQ(count_ddnnf(p, 2), 1);
}

TEST(Checks, DetectViolations) {
  auto bad_and = parse_nnf("nnf 3 2 1\nL 1\nL -1\nA 2 0 1\n");
  EXPECT_FALSE(check_decomposable(bad_and));
  auto bad_or = parse_nnf("nnf 3 2 2\nL 1\nL 2\nO 0 2 0 1\n");
  EXPECT_FALSE(check_deterministic(bad_or));
  EXPECT_TRUE(check_decomposable(bad_or));
}

TEST(Builder, Simplifications) {
  NnfBuilder b(3);
  NodeId x = b.literal(Lit::from_dimacs(1));
  EXPECT_EQ(b.literal(Lit::from_dimacs(1)), x);
  NodeId t = b.constant(true), f = b.constant(false);
  EXPECT_EQ(b.conjoin({x, t}), x);
  EXPECT_EQ(b.conjoin({x, f}), f);
  EXPECT_EQ(b.conjoin({}), t);
  EXPECT_EQ(b.disjoin({x, f}), x);
  EXPECT_EQ(b.disjoin({x, t}), t);
  EXPECT_EQ(b.disjoin({}), f);
  NodeId y = b.literal(Lit::from_dimacs(-2));
  NodeId a = b.conjoin({x, y});
  auto g = b.finish(a);
  EXPECT_EQ(g.size(), 3u);
  EXPECT_EQ(count_ddnnf(g), 2);
}

TEST(Evaluate, MatchesSemantics) {
  auto g = parse_nnf(fixtures::kOverlapNnf);
  auto f = fixtures::overlap_formula();
  for (unsigned a = 0; a < 32; ++a) {
    std::vector<char> v(6, 0);
    for (Var i = 1; i <= 5; ++i)
      v[i] = (a >> (i - 1)) & 1;
    EXPECT_EQ(evaluate(g, v), oracle::satisfies(f, v));
  }
  (void)lits;
}
