#pragma once

#include <string>
#include <vector>

#include "pmc/cnf.hpp"
#include "pmc/gen.hpp"

namespace pmc::fixtures {

// Variables p, q, r, x, y, z are 1..6.
inline CnfFormula six_var_formula() {
  CnfFormula f;
  f.num_vars = 6;
  f.clauses = {{-2, 4, -1}, {-3, -5, 6}, {3, -6, -1},
               {6, 5, -1, 3}, {3, 6, -5, -1}, {1, 2}};
  return f;
}

inline ProjectedCnf six_var() { return {six_var_formula(), {1, 2, 3}}; }

inline const char *kSixVarDimacs = "p cnf 6 6\n"
                                     "c p show 1 2 3 0\n"
                                     "-2 4 -1 0\n"
                                     "-3 -5 6 0\n"
                                     "3 -6 -1 0\n"
                                     "6 5 -1 3 0\n"
                                     "3 6 -5 -1 0\n"
                                     "1 2 0\n";

// Variables p, q, x, y, z are 1..5.
inline CnfFormula overlap_formula() {
  CnfFormula f;
  f.num_vars = 5;
  f.clauses = {{-3, 1}, {2, -3, 4}, {-1, -4, -5, 2}, {3, 2}, {-2, 1}};
  return f;
}

inline ProjectedCnf overlap() { return {overlap_formula(), {1, 2}}; }

// The d-DNNF of the overlap instance formula:
// (x & p & ((~q & y & ~z) | q)) | (~x & q & p)
inline const char *kOverlapNnf = "nnf 12 13 5\n"
                              "L 3\n"
                              "L 1\n"
                              "L -2\n"
                              "L 4\n"
                              "L -5\n"
                              "A 3 2 3 4\n"
                              "L 2\n"
                              "O 2 2 5 6\n"
                              "A 3 0 1 7\n"
                              "L -3\n"
                              "A 3 9 6 1\n"
                              "O 3 2 8 10\n";

// Small random 3-SAT instance: n in 8..15, clause ratio in [0.5, 4.5],
// k in 3..n. Fully determined by `seed`.
inline ProjectedCnf random_uf3sat(std::uint64_t seed) {
  Xoshiro256ss rng(seed * 7919 + 17);
  auto n = static_cast<std::uint32_t>(8 + rng.bounded(8));
  double ratio = 0.5 + 4.0 * static_cast<double>(rng.bounded(1001)) / 1000.0;
  auto m = static_cast<std::uint32_t>(ratio * n + 0.5);
  auto k = static_cast<std::uint32_t>(3 + rng.bounded(n - 2));
  return gen_uf3sat(n, m, k, seed);
}

// Random circuit with n in 3..6 inputs and 1..2 rounds, kept to at most
// `max_vars` variables so brute force stays cheap; the seed is advanced
// until one fits.
inline ProjectedCnf random_circuit(std::uint64_t seed, Var max_vars = 24) {
  for (std::uint64_t s = seed * 1000003;; ++s) {
    Xoshiro256ss rng(s);
    auto n = static_cast<std::uint32_t>(3 + rng.bounded(6));
    auto c = static_cast<std::uint32_t>(1 + rng.bounded(3));
    auto probe = gen_circuit(n, c, 0, s);
    if (probe.num_vars() > max_vars)
      continue;
    auto k = static_cast<std::uint32_t>(1 + rng.bounded(probe.num_vars()));
    return gen_circuit(n, c, k, s);
  }
}

inline std::vector<Var> all_vars(Var n) {
  std::vector<Var> v;
  for (Var i = 1; i <= n; ++i)
    v.push_back(i);
  return v;
}

} // namespace pmc::fixtures
