#include "pmc/nnf.hpp"

#include <algorithm>
#include <charconv>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include "pmc/errors.hpp"

namespace pmc {

NnfGraph::NnfGraph(Var num_vars, std::vector<NnfNode> nodes)
    : num_vars_(num_vars), nodes_(std::move(nodes)) {
  if (nodes_.empty())
    throw std::invalid_argument("NNF graph needs at least one node");
  for (NodeId id = 0; id < nodes_.size(); ++id) {
    const auto &n = nodes_[id];
    if (n.kind == NnfKind::Literal &&
        (n.lit.var() == 0 || n.lit.var() > num_vars_))
      throw std::invalid_argument("node " + std::to_string(id) +
                                  ": literal variable out of range");
    for (NodeId c : n.children)
      if (c >= id)
        throw std::invalid_argument("node " + std::to_string(id) +
                                    ": child " + std::to_string(c) +
                                    " is not earlier in topological order");
  }
}

std::size_t NnfGraph::num_edges() const {
  std::size_t e = 0;
  for (const auto &n : nodes_)
    e += n.children.size();
  return e;
}

NnfGraph NnfGraph::constant(Var num_vars, bool value) {
  NnfNode n;
  n.kind = value ? NnfKind::True : NnfKind::False;
  return NnfGraph(num_vars, {n});
}

NodeId NnfBuilder::push(NnfNode n) {
  nodes_.push_back(std::move(n));
  return static_cast<NodeId>(nodes_.size() - 1);
}

NodeId NnfBuilder::literal(Lit l) {
  auto it = literal_ids_.find(l.code());
  if (it != literal_ids_.end())
    return it->second;
  NnfNode n;
  n.kind = NnfKind::Literal;
  n.lit = l;
  NodeId id = push(std::move(n));
  literal_ids_.emplace(l.code(), id);
  return id;
}

NodeId NnfBuilder::constant(bool value) {
  auto &slot = value ? true_id_ : false_id_;
  if (!slot) {
    NnfNode n;
    n.kind = value ? NnfKind::True : NnfKind::False;
    slot = push(std::move(n));
  }
  return *slot;
}

NodeId NnfBuilder::conjoin(std::vector<NodeId> children) {
  std::vector<NodeId> kept;
  for (NodeId c : children) {
    if (is_false(c))
      return constant(false);
    if (!is_true(c))
      kept.push_back(c);
  }
  if (kept.empty())
    return constant(true);
  if (kept.size() == 1)
    return kept.front();
  NnfNode n;
  n.kind = NnfKind::And;
  n.children = std::move(kept);
  return push(std::move(n));
}

NodeId NnfBuilder::disjoin(std::vector<NodeId> children, Var decision_var) {
  std::vector<NodeId> kept;
  for (NodeId c : children) {
    if (is_true(c))
      return constant(true);
    if (!is_false(c))
      kept.push_back(c);
  }
  if (kept.empty())
    return constant(false);
  if (kept.size() == 1)
    return kept.front();
  NnfNode n;
  n.kind = NnfKind::Or;
  n.decision_var = decision_var;
  n.children = std::move(kept);
  return push(std::move(n));
}

NnfGraph NnfBuilder::finish(NodeId root) const {
  std::vector<char> live(nodes_.size(), 0);
  live[root] = 1;
  for (NodeId id = root + 1; id-- > 0;)
    if (live[id])
      for (NodeId c : nodes_[id].children)
        live[c] = 1;
  std::vector<NodeId> remap(nodes_.size(), 0);
  std::vector<NnfNode> out;
  for (NodeId id = 0; id <= root; ++id) {
    if (!live[id])
      continue;
    NnfNode n = nodes_[id];
    for (auto &c : n.children)
      c = remap[c];
    remap[id] = static_cast<NodeId>(out.size());
    out.push_back(std::move(n));
  }
  return NnfGraph(num_vars_, std::move(out));
}

namespace {

std::vector<std::string_view> tokens(std::string_view s) {
  std::vector<std::string_view> out;
  std::size_t i = 0;
  while (i < s.size()) {
    while (i < s.size() && std::isspace(static_cast<unsigned char>(s[i])))
      ++i;
    std::size_t j = i;
    while (j < s.size() && !std::isspace(static_cast<unsigned char>(s[j])))
      ++j;
    if (j > i)
      out.push_back(s.substr(i, j - i));
    i = j;
  }
  return out;
}

long long int_at(const std::vector<std::string_view> &toks, std::size_t i,
                 std::size_t line, const std::string &where) {
  if (i >= toks.size())
    throw ParseError(line, where + ": truncated line");
  long long v = 0;
  auto tok = toks[i];
  auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
  if (ec != std::errc() || ptr != tok.data() + tok.size())
    throw ParseError(line, where + ": expected integer, got '" +
                               std::string(tok) + "'");
  return v;
}

} // namespace

NnfGraph parse_nnf(std::istream &in) {
  std::string raw;
  std::size_t lineno = 0;
  bool have_header = false;
  long long num_nodes = 0, num_edges = 0, num_vars = 0;
  std::vector<NnfNode> nodes;
  std::size_t edges = 0;

  while (std::getline(in, raw)) {
    ++lineno;
    auto toks = tokens(raw);
    if (toks.empty() || toks[0] == "c")
      continue;
    if (!have_header) {
      if (toks[0] != "nnf" || toks.size() != 4)
        throw ParseError(lineno, "expected 'nnf <nodes> <edges> <vars>'");
      num_nodes = int_at(toks, 1, lineno, "header");
      num_edges = int_at(toks, 2, lineno, "header");
      num_vars = int_at(toks, 3, lineno, "header");
      if (num_nodes < 0 || num_edges < 0 || num_vars < 0)
        throw ParseError(lineno, "header: negative count");
      have_header = true;
      continue;
    }
    const auto index = nodes.size();
    const std::string where = "node " + std::to_string(index);
    if (static_cast<long long>(index) >= num_nodes)
      throw ParseError(lineno, where + ": more nodes than the header declares");
    NnfNode n;
    std::size_t first_child = 0;
    long long k = 0;
    if (toks[0] == "L") {
      long long lit = int_at(toks, 1, lineno, where);
      long long v = lit < 0 ? -lit : lit;
      if (lit == 0 || v > num_vars)
        throw ParseError(lineno, where + ": literal out of range");
      if (toks.size() != 2)
        throw ParseError(lineno, where + ": trailing tokens");
      n.kind = NnfKind::Literal;
      n.lit = Lit::from_dimacs(static_cast<int>(lit));
    } else if (toks[0] == "A") {
      k = int_at(toks, 1, lineno, where);
      first_child = 2;
      n.kind = k == 0 ? NnfKind::True : NnfKind::And;
    } else if (toks[0] == "O") {
      long long dv = int_at(toks, 1, lineno, where);
      if (dv < 0 || dv > num_vars)
        throw ParseError(lineno, where + ": decision variable out of range");
      n.decision_var = static_cast<Var>(dv);
      k = int_at(toks, 2, lineno, where);
      first_child = 3;
      n.kind = k == 0 ? NnfKind::False : NnfKind::Or;
    } else {
      throw ParseError(lineno, where + ": unknown node type '" +
                                   std::string(toks[0]) + "'");
    }
    if (first_child != 0) {
      if (k < 0 || toks.size() != first_child + static_cast<std::size_t>(k))
        throw ParseError(lineno, where + ": child count mismatch");
      for (long long i = 0; i < k; ++i) {
        long long c = int_at(toks, first_child + i, lineno, where);
        if (c < 0 || c >= static_cast<long long>(index))
          throw ParseError(lineno, where + ": child " + std::to_string(c) +
                                       " is not an earlier node");
        n.children.push_back(static_cast<NodeId>(c));
      }
      if (n.kind == NnfKind::False)
        n.decision_var = 0;
      edges += n.children.size();
    }
    nodes.push_back(std::move(n));
  }
  if (!have_header)
    throw ParseError(lineno, "missing nnf header");
  if (static_cast<long long>(nodes.size()) != num_nodes)
    throw ParseError(lineno, "node " + std::to_string(nodes.size()) +
                                 ": header declares " +
                                 std::to_string(num_nodes) + " nodes");
  if (static_cast<long long>(edges) != num_edges)
    throw ParseError(lineno, "header declares " + std::to_string(num_edges) +
                                 " edges but " + std::to_string(edges) +
                                 " were read");
  if (nodes.empty())
    throw ParseError(lineno, "empty NNF");
  return NnfGraph(static_cast<Var>(num_vars), std::move(nodes));
}

NnfGraph parse_nnf(std::string_view text) {
  std::istringstream in{std::string(text)};
  return parse_nnf(in);
}

void write_nnf(const NnfGraph &g, std::ostream &out) {
  out << "nnf " << g.size() << ' ' << g.num_edges() << ' ' << g.num_vars()
      << '\n';
  for (const auto &n : g.nodes()) {
    switch (n.kind) {
    case NnfKind::Literal:
      out << "L " << n.lit.to_dimacs();
      break;
    case NnfKind::True:
      out << "A 0";
      break;
    case NnfKind::False:
      out << "O 0 0";
      break;
    case NnfKind::And:
      out << "A " << n.children.size();
      break;
    case NnfKind::Or:
      out << "O " << n.decision_var << ' ' << n.children.size();
      break;
    }
    for (NodeId c : n.children)
      out << ' ' << c;
    out << '\n';
  }
}

std::string to_nnf(const NnfGraph &g) {
  std::ostringstream out;
  write_nnf(g, out);
  return out.str();
}

namespace {

void normalize(Dyadic &d) {
  if (d.numerator == 0) {
    d.exponent = 0;
    return;
  }
  auto shift = std::min<std::uint64_t>(
      boost::multiprecision::lsb(d.numerator), d.exponent);
  d.numerator >>= static_cast<unsigned>(shift);
  d.exponent -= shift;
}

} // namespace

Dyadic satisfaction_probability(const NnfGraph &g) {
  std::vector<Dyadic> value(g.size());
  for (NodeId id = 0; id < g.size(); ++id) {
    const auto &n = g.node(id);
    Dyadic d;
    switch (n.kind) {
    case NnfKind::Literal:
      d = {1, 1};
      break;
    case NnfKind::True:
      d = {1, 0};
      break;
    case NnfKind::False:
      d = {0, 0};
      break;
    case NnfKind::And:
      d = {1, 0};
      for (NodeId c : n.children) {
        d.numerator *= value[c].numerator;
        d.exponent += value[c].exponent;
      }
      break;
    case NnfKind::Or: {
      std::uint64_t e = 0;
      for (NodeId c : n.children)
        e = std::max(e, value[c].exponent);
      d = {0, e};
      for (NodeId c : n.children)
        d.numerator += value[c].numerator
                       << static_cast<unsigned>(e - value[c].exponent);
      break;
    }
    }
    normalize(d);
    value[id] = std::move(d);
  }
  return value[g.root()];
}

BigCount count_ddnnf(const NnfGraph &g) { return count_ddnnf(g, g.num_vars()); }

BigCount count_ddnnf(const NnfGraph &g, Var universe_vars) {
  auto p = satisfaction_probability(g);
  if (p.exponent > universe_vars)
    throw InternalError("non-integral model count (probability " +
                        p.numerator.str() + "/2^" +
                        std::to_string(p.exponent) + " over " +
                        std::to_string(universe_vars) +
                        " variables): graph is not deterministic");
  return p.numerator << static_cast<unsigned>(universe_vars - p.exponent);
}

namespace {

std::vector<std::vector<Var>> node_vars(const NnfGraph &g) {
  std::vector<std::vector<Var>> vars(g.size());
  for (NodeId id = 0; id < g.size(); ++id) {
    const auto &n = g.node(id);
    if (n.kind == NnfKind::Literal) {
      vars[id] = {n.lit.var()};
      continue;
    }
    std::vector<Var> acc;
    for (NodeId c : n.children)
      acc.insert(acc.end(), vars[c].begin(), vars[c].end());
    std::sort(acc.begin(), acc.end());
    acc.erase(std::unique(acc.begin(), acc.end()), acc.end());
    vars[id] = std::move(acc);
  }
  return vars;
}

std::vector<Lit> top_level_literals(const NnfGraph &g, NodeId id) {
  const auto &n = g.node(id);
  if (n.kind == NnfKind::Literal)
    return {n.lit};
  std::vector<Lit> out;
  if (n.kind == NnfKind::And)
    for (NodeId c : n.children)
      if (g.node(c).kind == NnfKind::Literal)
        out.push_back(g.node(c).lit);
  std::sort(out.begin(), out.end());
  return out;
}

} // namespace

CheckResult check_decomposable(const NnfGraph &g) {
  auto vars = node_vars(g);
  for (NodeId id = 0; id < g.size(); ++id) {
    const auto &n = g.node(id);
    if (n.kind != NnfKind::And)
      continue;
    std::size_t total = 0;
    for (NodeId c : n.children)
      total += vars[c].size();
    if (total != vars[id].size())
      return {false, "AND node " + std::to_string(id) +
                         " has children sharing a variable"};
  }
  return {};
}

CheckResult check_deterministic(const NnfGraph &g) {
  for (NodeId id = 0; id < g.size(); ++id) {
    const auto &n = g.node(id);
    if (n.kind != NnfKind::Or || n.children.size() < 2)
      continue;
    std::vector<std::vector<Lit>> tops;
    for (NodeId c : n.children)
      tops.push_back(g.node(c).kind == NnfKind::False
                         ? std::vector<Lit>{}
                         : top_level_literals(g, c));
    for (std::size_t i = 0; i < tops.size(); ++i)
      for (std::size_t j = i + 1; j < tops.size(); ++j) {
        if (g.node(n.children[i]).kind == NnfKind::False ||
            g.node(n.children[j]).kind == NnfKind::False)
          continue;
        bool clash = std::any_of(tops[i].begin(), tops[i].end(), [&](Lit l) {
          return std::binary_search(tops[j].begin(), tops[j].end(), ~l);
        });
        if (!clash)
          return {false, "OR node " + std::to_string(id) + ": disjuncts " +
                             std::to_string(n.children[i]) + " and " +
                             std::to_string(n.children[j]) +
                             " may overlap (no complementary literals)"};
      }
  }
  return {};
}

NnfGraph project(const NnfGraph &g, std::span<const Var> priority) {
  std::vector<char> keep(g.num_vars() + 1, 0);
  for (Var v : priority)
    if (v <= g.num_vars())
      keep[v] = 1;
  NnfBuilder b(g.num_vars());
  std::vector<NodeId> map(g.size());
  for (NodeId id = 0; id < g.size(); ++id) {
    const auto &n = g.node(id);
    std::vector<NodeId> kids;
    for (NodeId c : n.children)
      kids.push_back(map[c]);
    switch (n.kind) {
    case NnfKind::Literal:
      map[id] = keep[n.lit.var()] ? b.literal(n.lit) : b.constant(true);
      break;
    case NnfKind::True:
      map[id] = b.constant(true);
      break;
    case NnfKind::False:
      map[id] = b.constant(false);
      break;
    case NnfKind::And:
      map[id] = b.conjoin(std::move(kids));
      break;
    case NnfKind::Or:
      map[id] = b.disjoin(std::move(kids),
                          keep[n.decision_var] ? n.decision_var : 0);
      break;
    }
  }
  return b.finish(map[g.root()]);
}

bool evaluate(const NnfGraph &g, const std::vector<char> &values) {
  std::vector<char> val(g.size(), 0);
  for (NodeId id = 0; id < g.size(); ++id) {
    const auto &n = g.node(id);
    switch (n.kind) {
    case NnfKind::Literal:
      val[id] = (values[n.lit.var()] != 0) == n.lit.positive();
      break;
    case NnfKind::True:
      val[id] = 1;
      break;
    case NnfKind::False:
      val[id] = 0;
      break;
    case NnfKind::And:
      val[id] = std::all_of(n.children.begin(), n.children.end(),
                            [&](NodeId c) { return val[c] != 0; });
      break;
    case NnfKind::Or:
      val[id] = std::any_of(n.children.begin(), n.children.end(),
                            [&](NodeId c) { return val[c] != 0; });
      break;
    }
  }
  return val[g.root()] != 0;
}

} // namespace pmc
