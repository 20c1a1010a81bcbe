#pragma once

#include "pmc/bigcount.hpp"
#include "pmc/cnf.hpp"

namespace pmc::oracle {

/// Largest variable block the brute-force routines will enumerate.
inline constexpr Var kDefaultCap = 26;

/// ct(F) by evaluating every total assignment. Refuses (LimitExceeded) when
/// num_vars exceeds `cap`.
BigCount count_models_bruteforce(const CnfFormula &f, Var cap = kDefaultCap);

/// ct(F, P): for each of the 2^|P| priority assignments, search the 2^|N|
/// completions for a model and stop at the first one. Refuses when either
/// block exceeds `cap`.
BigCount count_projected_bruteforce(const ProjectedCnf &pf,
                                    Var cap = kDefaultCap);

/// Direct evaluation of a clause set under a total assignment given as a
/// per-variable value table (index 0 unused).
bool satisfies(const CnfFormula &f, const std::vector<char> &values);

} // namespace pmc::oracle
