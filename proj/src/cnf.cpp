#include "pmc/cnf.hpp"

#include <algorithm>
#include <stdexcept>

namespace pmc {

std::string to_string(Lit l) { return std::to_string(l.to_dimacs()); }

Clause::Clause(std::vector<Lit> lits) : lits_(std::move(lits)) {
  std::sort(lits_.begin(), lits_.end());
  lits_.erase(std::unique(lits_.begin(), lits_.end()), lits_.end());
}

Clause::Clause(std::initializer_list<int> dimacs) {
  std::vector<Lit> lits;
  for (int x : dimacs)
    lits.push_back(Lit::from_dimacs(x));
  *this = Clause(std::move(lits));
}

bool Clause::contains(Lit l) const {
  return std::binary_search(lits_.begin(), lits_.end(), l);
}

bool Clause::is_tautology() const {
  // Sorted by code, so l and ~l are adjacent.
  for (std::size_t i = 1; i < lits_.size(); ++i)
    if (lits_[i].var() == lits_[i - 1].var())
      return true;
  return false;
}

Var Clause::max_var() const { return lits_.empty() ? 0 : lits_.back().var(); }

void CnfFormula::validate() const {
  for (const auto &c : clauses)
    if (c.max_var() > num_vars)
      throw std::invalid_argument("literal variable " +
                                  std::to_string(c.max_var()) +
                                  " exceeds variable count " +
                                  std::to_string(num_vars));
}

bool CnfFormula::has_empty_clause() const {
  return std::any_of(clauses.begin(), clauses.end(),
                     [](const Clause &c) { return c.empty(); });
}

std::vector<Var> CnfFormula::occurring_vars() const {
  std::vector<char> seen(num_vars + 1, 0);
  for (const auto &c : clauses)
    for (Lit l : c)
      seen[l.var()] = 1;
  std::vector<Var> out;
  for (Var v = 1; v <= num_vars; ++v)
    if (seen[v])
      out.push_back(v);
  return out;
}

bool same_clause_set(const CnfFormula &a, const CnfFormula &b) {
  auto sorted = [](const CnfFormula &f) {
    auto cs = f.clauses;
    std::sort(cs.begin(), cs.end());
    cs.erase(std::unique(cs.begin(), cs.end()), cs.end());
    return cs;
  };
  return sorted(a) == sorted(b);
}

Assignment::Assignment(std::vector<Lit> lits) : lits_(std::move(lits)) {
  std::sort(lits_.begin(), lits_.end());
  lits_.erase(std::unique(lits_.begin(), lits_.end()), lits_.end());
  for (std::size_t i = 1; i < lits_.size(); ++i)
    if (lits_[i].var() == lits_[i - 1].var())
      throw std::invalid_argument("inconsistent assignment on variable " +
                                  std::to_string(lits_[i].var()));
}

Assignment::Assignment(std::initializer_list<int> dimacs) {
  std::vector<Lit> lits;
  for (int x : dimacs)
    lits.push_back(Lit::from_dimacs(x));
  *this = Assignment(std::move(lits));
}

bool Assignment::contains(Lit l) const {
  return std::binary_search(lits_.begin(), lits_.end(), l);
}

bool Assignment::assigns(Var v) const {
  return contains(Lit(v, true)) || contains(Lit(v, false));
}

Assignment Assignment::restrict_to(std::span<const Var> vars) const {
  std::vector<Lit> out;
  for (Lit l : lits_)
    if (std::binary_search(vars.begin(), vars.end(), l.var()))
      out.push_back(l);
  return Assignment(std::move(out));
}

Assignment Assignment::merged(const Assignment &other) const {
  std::vector<Lit> all(lits_);
  all.insert(all.end(), other.lits_.begin(), other.lits_.end());
  return Assignment(std::move(all));
}

Clause Assignment::negation() const {
  std::vector<Lit> out;
  out.reserve(lits_.size());
  for (Lit l : lits_)
    out.push_back(~l);
  return Clause(std::move(out));
}

ProjectedCnf::ProjectedCnf(CnfFormula formula) : formula_(std::move(formula)) {
  formula_.validate();
  for (Var v = 1; v <= formula_.num_vars; ++v)
    priority_.push_back(v);
  mask_.assign(formula_.num_vars + 1, 1);
  mask_[0] = 0;
}

ProjectedCnf::ProjectedCnf(CnfFormula formula, std::vector<Var> priority)
    : formula_(std::move(formula)), priority_(std::move(priority)) {
  formula_.validate();
  std::sort(priority_.begin(), priority_.end());
  priority_.erase(std::unique(priority_.begin(), priority_.end()),
                  priority_.end());
  mask_.assign(formula_.num_vars + 1, 0);
  for (Var v : priority_) {
    if (v == 0 || v > formula_.num_vars)
      throw std::invalid_argument("priority variable " + std::to_string(v) +
                                  " out of range");
    mask_[v] = 1;
  }
}

std::vector<Var> ProjectedCnf::non_priority() const {
  std::vector<Var> out;
  for (Var v = 1; v <= formula_.num_vars; ++v)
    if (!mask_[v])
      out.push_back(v);
  return out;
}

CnfFormula residual(const CnfFormula &f, const Assignment &theta) {
  CnfFormula out;
  out.num_vars = f.num_vars;
  for (const auto &c : f.clauses) {
    bool satisfied = false;
    std::vector<Lit> kept;
    for (Lit l : c) {
      if (theta.contains(l)) {
        satisfied = true;
        break;
      }
      if (!theta.contains(~l))
        kept.push_back(l);
    }
    if (!satisfied)
      out.clauses.emplace_back(std::move(kept));
  }
  return out;
}

bool is_cube(const CnfFormula &f, const Assignment &theta) {
  return std::all_of(f.clauses.begin(), f.clauses.end(), [&](const Clause &c) {
    return std::any_of(c.begin(), c.end(),
                       [&](Lit l) { return theta.contains(l); });
  });
}

BigCount cube_size(Var num_vars, const Assignment &theta) {
  if (theta.size() > num_vars)
    throw std::invalid_argument("assignment larger than variable set");
  return pow2(num_vars - theta.size());
}

BigCount projected_cube_size(const ProjectedCnf &pf, const Assignment &theta) {
  auto restricted = theta.restrict_to(pf.priority());
  return pow2(pf.priority().size() - restricted.size());
}

} // namespace pmc
