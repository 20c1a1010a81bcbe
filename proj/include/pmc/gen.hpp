#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>

#include "pmc/cnf.hpp"

namespace pmc {

/// xoshiro256** seeded through splitmix64, so a 64-bit seed fixes the
/// whole stream on every platform.
class Xoshiro256ss {
public:
  explicit Xoshiro256ss(std::uint64_t seed);

  std::uint64_t next();
  /// Uniform in [0, n) without modulo bias; n > 0.
  std::uint64_t bounded(std::uint64_t n);

private:
  std::uint64_t s_[4];
};

enum class GenFamily { Uf3Sat, Circuit };

struct GenSpec {
  GenFamily family = GenFamily::Uf3Sat;
  std::uint32_t n = 0;  // variables (uf3sat) or inputs (circuit)
  std::uint32_t m = 0;  // clauses (uf3sat) or rounds (circuit)
  std::uint32_t k = 0;  // priority variables
  std::uint64_t seed = 0;

  /// `c gen-spec family=... n=... m=... k=... seed=...`
  std::string comment() const;
};

/// m distinct 3-clauses over n variables, each on three distinct variables
/// with random signs; k priority variables drawn without replacement.
/// Throws std::invalid_argument when n < 3, k > n, or m exceeds the number
/// of distinct 3-clauses.
ProjectedCnf gen_uf3sat(std::uint32_t n, std::uint32_t m, std::uint32_t k,
                        std::uint64_t seed);

/// c rounds of random gate building over the n inputs. Each round starts
/// from the inputs and repeatedly replaces operands by a fresh gate variable
/// (AND/OR of 2..min(4, size) operands, or NOT of one) until one remains.
/// Gates are encoded as equivalences. k priority variables are drawn from
/// all variables. Throws std::invalid_argument when n < 2, c < 1, or k
/// exceeds the final variable count.
ProjectedCnf gen_circuit(std::uint32_t n, std::uint32_t c, std::uint32_t k,
                         std::uint64_t seed);

ProjectedCnf generate(const GenSpec &spec);
/// Spec comment followed by the DIMACS text.
void write_generated(const GenSpec &spec, std::ostream &out);

} // namespace pmc
