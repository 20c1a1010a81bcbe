#pragma once

#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

#include "pmc/cnf.hpp"

namespace pmc {

/// Reads DIMACS CNF. The priority set is the union of all `c p show ... 0`
/// and `c ind ... 0` declarations, or every variable when none is present.
/// Tautological clauses are dropped and reported through `warnings`.
/// Throws ParseError carrying the offending line number.
ProjectedCnf parse_dimacs(std::istream &in,
                          std::vector<std::string> *warnings = nullptr);
ProjectedCnf parse_dimacs(std::string_view text,
                          std::vector<std::string> *warnings = nullptr);

/// Header, then a `c p show` line (always, unless there are no variables),
/// then one clause per line.
void write_dimacs(const ProjectedCnf &pf, std::ostream &out);
std::string to_dimacs(const ProjectedCnf &pf);

/// Plain CNF without a projection line.
void write_cnf(const CnfFormula &f, std::ostream &out);

} // namespace pmc
