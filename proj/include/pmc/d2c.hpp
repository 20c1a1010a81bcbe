#pragma once

#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "pmc/bigcount.hpp"
#include "pmc/cnf.hpp"
#include "pmc/counter.hpp"
#include "pmc/nnf.hpp"

namespace pmc {

struct D2cOptions {
  /// Reuse one introduced variable for structurally equal expressions.
  bool hash_consing = true;
};

/// CNF whose models, restricted to the priority variables it mentions, are
/// the projected models of the source graph. Introduced variables are
/// numbered from num_original_vars + 1.
struct D2cResult {
  CnfFormula cnf;
  std::vector<Var> priority;
  Var num_original_vars = 0;
  std::size_t introduced = 0;
  /// The root forgot to true: every priority assignment counts and `cnf`
  /// has no clauses.
  bool tautology = false;

  /// Priority variables that do not occur in `cnf`; each doubles the count.
  std::size_t absent_priority() const;
};

/// Forget the variables outside `priority` and Tseitin-encode what is left,
/// one definition per distinct AND/OR expression, then assert the root.
/// A root that simplifies to false yields a single empty clause.
D2cResult d2c(const NnfGraph &g, std::span<const Var> priority,
              D2cOptions opts = {});

/// DIMACS for the d2c output with variables compacted to 1..k. The mapping
/// back to original numbers and the absent-priority multiplier are recorded
/// as comment lines. No projection line: the formula is counted in full.
void write_d2c_dimacs(const D2cResult &r, std::ostream &out);
std::string to_d2c_dimacs(const D2cResult &r);

/// Model count of the d2c formula over its occurring variables, times
/// 2^absent_priority().
BigCount count_d2c(const D2cResult &r, CounterOptions opts = {},
                   CounterStats *stats = nullptr);

struct D2cCount {
  BigCount count;
  std::uint64_t decisions = 0;
  std::size_t cnf_bytes = 0; // size of the DIMACS text of the d2c formula
  std::size_t nnf_nodes = 0;
};

/// compile_ddnnf, d2c and count_d2c in sequence. A graph given in
/// `external` replaces the internal compilation.
D2cCount count_via_d2c(const ProjectedCnf &pf, CounterOptions opts = {},
                       const NnfGraph *external = nullptr,
                       D2cOptions d2c_opts = {});

} // namespace pmc
