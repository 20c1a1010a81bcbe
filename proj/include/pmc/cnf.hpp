#pragma once

#include <compare>
#include <cstdint>
#include <cstdlib>
#include <initializer_list>
#include <span>
#include <string>
#include <vector>

#include "pmc/bigcount.hpp"

namespace pmc {

/// 1-based variable index, identical to DIMACS numbering.
using Var = std::uint32_t;

/// A literal packed as 2*var + sign, so the negation flips the low bit.
class Lit {
public:
  constexpr Lit() = default;
  constexpr Lit(Var v, bool positive) : code_(2 * v + (positive ? 0u : 1u)) {}

  static constexpr Lit from_dimacs(int x) {
    return Lit(static_cast<Var>(x < 0 ? -x : x), x > 0);
  }
  static constexpr Lit from_code(std::uint32_t code) {
    Lit l;
    l.code_ = code;
    return l;
  }

  constexpr Var var() const { return code_ >> 1; }
  constexpr bool positive() const { return (code_ & 1u) == 0; }
  constexpr std::uint32_t code() const { return code_; }
  constexpr int to_dimacs() const {
    return positive() ? static_cast<int>(var()) : -static_cast<int>(var());
  }

  constexpr Lit operator~() const { return from_code(code_ ^ 1u); }

  constexpr auto operator<=>(const Lit &) const = default;

private:
  std::uint32_t code_ = 0;
};

std::string to_string(Lit l);

/// Sorted, duplicate-free set of literals read as a disjunction.
class Clause {
public:
  Clause() = default;
  explicit Clause(std::vector<Lit> lits);
  Clause(std::initializer_list<int> dimacs);

  std::span<const Lit> lits() const { return lits_; }
  std::size_t size() const { return lits_.size(); }
  bool empty() const { return lits_.empty(); }
  bool contains(Lit l) const;
  /// True when some variable appears in both polarities.
  bool is_tautology() const;
  Var max_var() const;

  auto begin() const { return lits_.begin(); }
  auto end() const { return lits_.end(); }

  bool operator==(const Clause &) const = default;
  auto operator<=>(const Clause &) const = default;

private:
  std::vector<Lit> lits_;
};

struct CnfFormula {
  Var num_vars = 0;
  std::vector<Clause> clauses;

  /// Throws std::invalid_argument when a literal exceeds num_vars.
  void validate() const;
  bool has_empty_clause() const;
  /// Variables occurring in some clause, ascending.
  std::vector<Var> occurring_vars() const;
};

/// Order-insensitive clause-set equality (clauses compared as literal sets).
bool same_clause_set(const CnfFormula &a, const CnfFormula &b);

/// Consistent set of literals. Lookups are by variable.
class Assignment {
public:
  Assignment() = default;
  /// Throws std::invalid_argument if a literal and its negation both occur.
  explicit Assignment(std::vector<Lit> lits);
  Assignment(std::initializer_list<int> dimacs);

  std::span<const Lit> lits() const { return lits_; }
  std::size_t size() const { return lits_.size(); }
  bool empty() const { return lits_.empty(); }
  bool contains(Lit l) const;
  bool assigns(Var v) const;

  /// Members whose variable is in the sorted set `vars`.
  Assignment restrict_to(std::span<const Var> vars) const;
  /// Union; throws if the result would be inconsistent.
  Assignment merged(const Assignment &other) const;
  /// The clause  OR_{l in theta} ~l.
  Clause negation() const;

  auto begin() const { return lits_.begin(); }
  auto end() const { return lits_.end(); }

  bool operator==(const Assignment &) const = default;

private:
  std::vector<Lit> lits_;
};

/// A CNF with its priority (projection) set. The non-priority set is always
/// derived as the complement and never stored.
class ProjectedCnf {
public:
  ProjectedCnf() = default;
  /// Full projection: priority = all variables.
  explicit ProjectedCnf(CnfFormula formula);
  ProjectedCnf(CnfFormula formula, std::vector<Var> priority);

  const CnfFormula &formula() const { return formula_; }
  Var num_vars() const { return formula_.num_vars; }
  std::span<const Var> priority() const { return priority_; }
  std::vector<Var> non_priority() const;
  /// Indexed by variable; entry 0 unused.
  const std::vector<char> &priority_mask() const { return mask_; }
  bool is_priority(Var v) const { return v < mask_.size() && mask_[v]; }

  bool operator==(const ProjectedCnf &o) const {
    return priority_ == o.priority_ && formula_.num_vars == o.num_vars() &&
           same_clause_set(formula_, o.formula_);
  }

private:
  CnfFormula formula_;
  std::vector<Var> priority_;
  std::vector<char> mask_;
};

/// F|theta: drop satisfied clauses, delete falsified literals. An all-false
/// clause survives as the empty clause.
CnfFormula residual(const CnfFormula &f, const Assignment &theta);

/// True iff residual(f, theta) has no clauses.
bool is_cube(const CnfFormula &f, const Assignment &theta);

/// 2^(|V| - |theta|).
BigCount cube_size(Var num_vars, const Assignment &theta);
/// 2^(|P| - |theta_P|).
BigCount projected_cube_size(const ProjectedCnf &pf, const Assignment &theta);

} // namespace pmc
