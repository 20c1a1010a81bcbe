#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "pmc/bigcount.hpp"
#include "pmc/cnf.hpp"
#include "pmc/nnf.hpp"

namespace pmc {

enum class Method { Oracle, Dsharp, Blocking, Enum, D2c };

std::optional<Method> parse_method(std::string_view name);
std::string_view method_name(Method m);

struct RunOptions {
  double time_limit = 0; // seconds; 0 means none
  bool caching = true;
  bool learning = false;
  const NnfGraph *nnf_in = nullptr; // d2c only
};

struct RunReport {
  BigCount count;
  double seconds = 0;
  std::uint64_t decisions = 0;
  std::optional<double> r;           // blocking / enum
  std::optional<std::size_t> s;      // d2c
  std::optional<std::uint64_t> cubes;
  std::optional<std::uint64_t> max_live_blocking;
};

/// Runs one counting method. Propagates ParseError, LimitExceeded and
/// InternalError from the method.
RunReport run_method(const ProjectedCnf &pf, Method m, const RunOptions &opts);

struct BenchRow {
  std::string instance;
  Method method = Method::Oracle;
  std::optional<BigCount> count;
  double seconds = 0;
  std::uint64_t decisions = 0;
  std::optional<double> r;
  std::optional<std::size_t> s;
  std::string status; // OK, TIMEOUT, LIMIT, ERROR or FAIL
  std::string detail;
};

/// Non-empty, non-comment lines of a manifest; relative paths are taken
/// relative to `base_dir`.
std::vector<std::string> read_manifest(std::istream &in,
                                       const std::string &base_dir);

/// One row per (instance, method), instance-major. Completed counts of an
/// instance are cross-checked: rows disagreeing with the oracle (or, without
/// an oracle row, any disagreement at all) become FAIL.
std::vector<BenchRow> run_bench(const std::vector<std::string> &instances,
                                const std::vector<Method> &methods,
                                double time_limit, unsigned jobs = 1);

void write_bench_csv(const std::vector<BenchRow> &rows, std::ostream &out);

} // namespace pmc
