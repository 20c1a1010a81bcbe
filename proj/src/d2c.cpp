#include "pmc/d2c.hpp"

#include <algorithm>
#include <map>
#include <ostream>
#include <sstream>

#include "pmc/dimacs.hpp"
#include "pmc/errors.hpp"

namespace pmc {
namespace {

// What a node became: a constant or a literal of the output formula.
struct Mapped {
  enum Kind { True, False, Literal } kind = True;
  Lit lit;
};

struct ExprKey {
  bool is_or;
  std::vector<Lit> lits;
  auto operator<=>(const ExprKey &) const = default;
};

} // namespace

std::size_t D2cResult::absent_priority() const {
  std::vector<char> seen(cnf.num_vars + 1, 0);
  for (const auto &c : cnf.clauses)
    for (Lit l : c)
      seen[l.var()] = 1;
  std::size_t absent = 0;
  for (Var v : priority)
    if (v > cnf.num_vars || !seen[v])
      ++absent;
  return absent;
}

D2cResult d2c(const NnfGraph &g, std::span<const Var> priority,
              D2cOptions opts) {
  D2cResult r;
  r.priority.assign(priority.begin(), priority.end());
  std::sort(r.priority.begin(), r.priority.end());
  r.priority.erase(std::unique(r.priority.begin(), r.priority.end()),
                   r.priority.end());
  Var top = g.num_vars();
  for (Var v : r.priority)
    top = std::max(top, v);
  r.num_original_vars = top;

  std::vector<char> keep(top + 1, 0);
  for (Var v : r.priority)
    keep[v] = 1;

  std::vector<Mapped> at(g.size());
  std::map<ExprKey, Lit> with_hash;
  Var next = top;
  auto &out = r.cnf.clauses;

  for (NodeId id = 0; id < g.size(); ++id) {
    const auto &n = g.node(id);
    switch (n.kind) {
    case NnfKind::Literal:
      at[id] = keep[n.lit.var()] ? Mapped{Mapped::Literal, n.lit}
                                 : Mapped{Mapped::True, {}};
      continue;
    case NnfKind::True:
      at[id] = {Mapped::True, {}};
      continue;
    case NnfKind::False:
      at[id] = {Mapped::False, {}};
      continue;
    case NnfKind::And:
    case NnfKind::Or:
      break;
    }

    const bool is_or = n.kind == NnfKind::Or;
    const auto absorbing = is_or ? Mapped::True : Mapped::False;
    std::vector<Lit> lits;
    bool absorbed = false;
    for (NodeId c : n.children) {
      const auto &m = at[c];
      if (m.kind == absorbing) {
        absorbed = true;
        break;
      }
      if (m.kind == Mapped::Literal)
        lits.push_back(m.lit);
    }
    if (absorbed) {
      at[id] = {absorbing, {}};
      continue;
    }
    std::sort(lits.begin(), lits.end());
    lits.erase(std::unique(lits.begin(), lits.end()), lits.end());
    if (lits.empty()) {
      at[id] = {is_or ? Mapped::False : Mapped::True, {}};
      continue;
    }
    if (lits.size() == 1) {
      at[id] = {Mapped::Literal, lits[0]};
      continue;
    }

    ExprKey key{is_or, lits};
    if (opts.hash_consing) {
      auto it = with_hash.find(key);
      if (it != with_hash.end()) {
        at[id] = {Mapped::Literal, it->second};
        continue;
      }
    }
    Lit v(++next, true);
    ++r.introduced;
    std::vector<Lit> big{is_or ? ~v : v};
    for (Lit l : lits) {
      // OR: (v | ~l); AND: (~v | l).
      out.emplace_back(std::vector<Lit>{is_or ? v : ~v, is_or ? ~l : l});
      big.push_back(is_or ? l : ~l);
    }
    out.emplace_back(std::move(big));
    if (opts.hash_consing)
      with_hash.emplace(std::move(key), v);
    at[id] = {Mapped::Literal, v};
  }

  r.cnf.num_vars = next;
  const Mapped root = g.size() == 0 ? Mapped{} : at[g.root()];
  switch (root.kind) {
  case Mapped::True:
    r.tautology = true;
    r.cnf.clauses.clear();
    break;
  case Mapped::False:
    r.cnf.clauses.clear();
    r.cnf.clauses.emplace_back();
    break;
  case Mapped::Literal:
    r.cnf.clauses.emplace_back(std::vector<Lit>{root.lit});
    break;
  }
  return r;
}

void write_d2c_dimacs(const D2cResult &r, std::ostream &out) {
  std::vector<Var> renum(r.cnf.num_vars + 1, 0);
  std::vector<Var> original;
  for (const auto &c : r.cnf.clauses)
    for (Lit l : c)
      renum[l.var()] = 1;
  for (Var v = 1; v <= r.cnf.num_vars; ++v)
    if (renum[v]) {
      original.push_back(v);
      renum[v] = static_cast<Var>(original.size());
    }
  out << "c d2c priority=" << r.priority.size()
      << " introduced=" << r.introduced << '\n';
  out << "c absent-priority " << r.absent_priority() << '\n';
  for (std::size_t i = 0; i < original.size(); ++i)
    out << "c map " << i + 1 << ' ' << original[i] << '\n';
  out << "p cnf " << original.size() << ' ' << r.cnf.clauses.size() << '\n';
  for (const auto &c : r.cnf.clauses) {
    for (Lit l : c)
      out << Lit(renum[l.var()], l.positive()).to_dimacs() << ' ';
    out << "0\n";
  }
}

std::string to_d2c_dimacs(const D2cResult &r) {
  std::ostringstream s;
  write_d2c_dimacs(r, s);
  return s.str();
}

BigCount count_d2c(const D2cResult &r, CounterOptions opts,
                   CounterStats *stats) {
  BigCount multiplier = pow2(r.absent_priority());
  if (r.tautology)
    return multiplier;
  ProjectedCnf pf(r.cnf, r.cnf.occurring_vars());
  auto res = count_projected(pf, std::move(opts));
  if (stats)
    *stats = res.stats;
  return res.count * multiplier;
}

D2cCount count_via_d2c(const ProjectedCnf &pf, CounterOptions opts,
                       const NnfGraph *external, D2cOptions d2c_opts) {
  D2cCount out;
  NnfGraph compiled;
  if (!external) {
    CounterStats cs;
    compiled = compile_ddnnf(pf.formula(), opts, &cs);
    out.decisions += cs.decisions;
  }
  const NnfGraph &g = external ? *external : compiled;
  out.nnf_nodes = g.size();
  D2cResult r = d2c(g, pf.priority(), d2c_opts);
  out.cnf_bytes = to_d2c_dimacs(r).size();
  CounterStats cs;
  out.count = count_d2c(r, std::move(opts), &cs);
  out.decisions += cs.decisions;
  return out;
}

} // namespace pmc
