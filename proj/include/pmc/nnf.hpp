#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "pmc/bigcount.hpp"
#include "pmc/cnf.hpp"

namespace pmc {

using NodeId = std::uint32_t;

enum class NnfKind : std::uint8_t { Literal, And, Or, True, False };

struct NnfNode {
  NnfKind kind = NnfKind::True;
  Lit lit;                      // Literal nodes only
  Var decision_var = 0;         // Or nodes; informational, 0 when unknown
  std::vector<NodeId> children; // And / Or nodes; every id < own id
};

/// Topologically sorted NNF DAG. The root is the last node.
class NnfGraph {
public:
  NnfGraph() = default;
  /// Throws std::invalid_argument on a forward or self reference, or on a
  /// literal outside 1..num_vars.
  NnfGraph(Var num_vars, std::vector<NnfNode> nodes);

  Var num_vars() const { return num_vars_; }
  std::span<const NnfNode> nodes() const { return nodes_; }
  const NnfNode &node(NodeId id) const { return nodes_[id]; }
  std::size_t size() const { return nodes_.size(); }
  NodeId root() const { return static_cast<NodeId>(nodes_.size() - 1); }
  std::size_t num_edges() const;

  static NnfGraph constant(Var num_vars, bool value);

private:
  Var num_vars_ = 0;
  std::vector<NnfNode> nodes_;
};

/// Incremental construction with literal and constant sharing and the usual
/// local simplifications (constant folding, single-child collapse).
class NnfBuilder {
public:
  explicit NnfBuilder(Var num_vars) : num_vars_(num_vars) {}

  NodeId literal(Lit l);
  NodeId constant(bool value);
  NodeId conjoin(std::vector<NodeId> children);
  NodeId disjoin(std::vector<NodeId> children, Var decision_var = 0);

  bool is_true(NodeId id) const { return nodes_[id].kind == NnfKind::True; }
  bool is_false(NodeId id) const { return nodes_[id].kind == NnfKind::False; }

  /// Graph whose root is `root`; unreachable nodes are dropped.
  NnfGraph finish(NodeId root) const;

private:
  NodeId push(NnfNode n);

  Var num_vars_;
  std::vector<NnfNode> nodes_;
  std::unordered_map<std::uint32_t, NodeId> literal_ids_;
  std::optional<NodeId> true_id_, false_id_;
};

/// c2d format: `nnf <nodes> <edges> <vars>`, then `L <lit>`,
/// `A <k> <c1..ck>`, `O <var> <k> <c1..ck>` lines. `A 0` is true and
/// `O 0 0` is false. Throws ParseError citing the node index.
NnfGraph parse_nnf(std::istream &in);
NnfGraph parse_nnf(std::string_view text);
void write_nnf(const NnfGraph &g, std::ostream &out);
std::string to_nnf(const NnfGraph &g);

/// Dyadic rational numerator / 2^exponent, kept in lowest terms.
struct Dyadic {
  BigCount numerator;
  std::uint64_t exponent = 0;
};

/// Satisfaction probability with every literal at 1/2.
Dyadic satisfaction_probability(const NnfGraph &g);

/// probability * 2^universe_vars (defaults to g.num_vars()). Only the true
/// model count when g is deterministic and decomposable. Throws
/// InternalError when the product is not an integer.
BigCount count_ddnnf(const NnfGraph &g);
BigCount count_ddnnf(const NnfGraph &g, Var universe_vars);

struct CheckResult {
  bool ok = true;
  std::string detail;
  explicit operator bool() const { return ok; }
};

/// AND children have pairwise-disjoint variable sets.
CheckResult check_decomposable(const NnfGraph &g);

/// Structural determinism: for every OR with two or more children, each pair
/// of disjuncts carries complementary literals among its top-level conjuncts.
/// Sufficient, not necessary.
CheckResult check_deterministic(const NnfGraph &g);

/// Forget every variable outside `priority` by replacing its literals with
/// true and simplifying (OR with a true child is true; AND drops true
/// children). The result is a DNNF over the priority variables and is in
/// general no longer deterministic.
NnfGraph project(const NnfGraph &g, std::span<const Var> priority);

/// Brute-force evaluation of the graph under a value table (index 0 unused).
bool evaluate(const NnfGraph &g, const std::vector<char> &values);

} // namespace pmc
