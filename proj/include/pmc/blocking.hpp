#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "pmc/bigcount.hpp"
#include "pmc/cdcl.hpp"
#include "pmc/cnf.hpp"
#include "pmc/deadline.hpp"

namespace pmc {

struct EnumOptions {
  /// Shrink each solution to a projected cube before blocking it.
  bool minimize = true;
  /// Keep every counted cube (with the solution's non-priority literals) in
  /// the result.
  bool record_cubes = false;
  cdcl::Options cdcl;
  /// Initial saved phases for the free search.
  std::vector<Lit> phase_hints;
  Deadline deadline;
};

struct EnumStats {
  BigCount total_count;
  std::uint64_t num_cubes = 0;
  std::uint64_t decisions = 0;
  std::uint64_t max_live_blocking = 0;
  std::uint64_t conflicts = 0;
  /// log2(total_count / num_cubes); 0 when no cube was found.
  double r = 0;
};

struct CubeRecord {
  Assignment cube;       // S
  Assignment non_priority; // theta_N of the solution S was shrunk from
};

struct EnumResult {
  BigCount count;
  EnumStats stats;
  std::vector<CubeRecord> cubes;
};

/// Exact projected count by controlled enumeration with coupled blocking
/// clauses. Throws LimitExceeded when the deadline passes.
EnumResult enumerate_count(const ProjectedCnf &pf, EnumOptions opts = {});

/// Occurrences of each literal in the clause set, indexed by literal code.
std::vector<std::uint32_t> literal_frequencies(const CnfFormula &f);

/// Greedy cube extraction from a total model `theta` of clauses and blocking.
/// Starts from the controlled decisions, then walks the clauses and the
/// blocking clauses in order; a clause already hit through S or through a
/// non-priority literal of theta is skipped, otherwise the most frequent
/// priority literal of theta in it is added (ties to the smaller variable).
/// Throws InternalError if theta falsifies one of the clauses.
Assignment shrink(const Assignment &theta, std::span<const Clause> clauses,
                  std::span<const Clause> blocking,
                  std::span<const Lit> controlled, const ProjectedCnf &pf,
                  const std::vector<std::uint32_t> &freq);

/// First literal of `s`, in frequency-then-variable order, that is
/// unassigned in `core`.
std::optional<Lit> pick_controlled_literal(const Assignment &s,
                                           const cdcl::SolverCore &core,
                                           const std::vector<std::uint32_t> &freq);

} // namespace pmc
