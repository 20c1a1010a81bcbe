#include "pmc/oracle.hpp"

#include <cstdint>
#include <string>

#include "pmc/errors.hpp"

namespace pmc::oracle {
namespace {

// A clause over at most 64 variables, as masks over a bit-numbering of the
// enumerated variables. Satisfied by bits `a` iff (pos & a) | (neg & ~a).
struct MaskClause {
  std::uint64_t pos = 0;
  std::uint64_t neg = 0;
};

void refuse_if_over(std::size_t n, Var cap, const char *what) {
  if (n > cap)
    throw LimitExceeded(std::string("oracle refuses: ") + what + " has " +
                        std::to_string(n) + " variables, cap is " +
                        std::to_string(cap));
}

} // namespace

bool satisfies(const CnfFormula &f, const std::vector<char> &values) {
  for (const auto &c : f.clauses) {
    bool sat = false;
    for (Lit l : c)
      if ((values[l.var()] != 0) == l.positive()) {
        sat = true;
        break;
      }
    if (!sat)
      return false;
  }
  return true;
}

BigCount count_models_bruteforce(const CnfFormula &f, Var cap) {
  refuse_if_over(f.num_vars, cap, "formula");
  std::vector<MaskClause> clauses;
  for (const auto &c : f.clauses) {
    MaskClause m;
    for (Lit l : c)
      (l.positive() ? m.pos : m.neg) |= std::uint64_t{1} << (l.var() - 1);
    clauses.push_back(m);
  }
  const std::uint64_t total = std::uint64_t{1} << f.num_vars;
  std::uint64_t models = 0;
  for (std::uint64_t a = 0; a < total; ++a) {
    bool ok = true;
    for (const auto &m : clauses)
      if (((m.pos & a) | (m.neg & ~a)) == 0) {
        ok = false;
        break;
      }
    models += ok ? 1 : 0;
  }
  return BigCount(models);
}

BigCount count_projected_bruteforce(const ProjectedCnf &pf, Var cap) {
  const auto prio = std::vector<Var>(pf.priority().begin(), pf.priority().end());
  const auto nonprio = pf.non_priority();
  refuse_if_over(prio.size(), cap, "priority set");
  refuse_if_over(nonprio.size(), cap, "non-priority set");

  // Bit positions: priority vars in the low word, non-priority in the high.
  std::vector<int> slot(pf.num_vars() + 1, 0);
  for (std::size_t i = 0; i < prio.size(); ++i)
    slot[prio[i]] = static_cast<int>(i);
  for (std::size_t i = 0; i < nonprio.size(); ++i)
    slot[nonprio[i]] = static_cast<int>(i);

  struct SplitClause {
    MaskClause p, n;
  };
  std::vector<SplitClause> clauses;
  for (const auto &c : pf.formula().clauses) {
    SplitClause s;
    for (Lit l : c) {
      auto &m = pf.is_priority(l.var()) ? s.p : s.n;
      (l.positive() ? m.pos : m.neg) |= std::uint64_t{1} << slot[l.var()];
    }
    clauses.push_back(s);
  }

  const std::uint64_t np = std::uint64_t{1} << prio.size();
  const std::uint64_t nn = std::uint64_t{1} << nonprio.size();
  std::uint64_t count = 0;
  std::vector<MaskClause> rest;
  for (std::uint64_t a = 0; a < np; ++a) {
    // Clauses not satisfied by the priority part must be met by N.
    rest.clear();
    bool dead = false;
    for (const auto &c : clauses) {
      if (((c.p.pos & a) | (c.p.neg & ~a)) != 0)
        continue;
      if ((c.n.pos | c.n.neg) == 0) {
        dead = true;
        break;
      }
      rest.push_back(c.n);
    }
    if (dead)
      continue;
    for (std::uint64_t b = 0; b < nn; ++b) {
      bool ok = true;
      for (const auto &m : rest)
        if (((m.pos & b) | (m.neg & ~b)) == 0) {
          ok = false;
          break;
        }
      if (ok) {
        ++count;
        break;
      }
    }
  }
  return BigCount(count);
}

} // namespace pmc::oracle
