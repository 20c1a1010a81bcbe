#pragma once

#include <array>
#include <cstdint>
#include <functional>
#include <list>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "pmc/bigcount.hpp"
#include "pmc/cnf.hpp"
#include "pmc/deadline.hpp"
#include "pmc/nnf.hpp"

namespace pmc {

/// Residual sub-formula together with its unfixed variables (sorted).
struct Component {
  std::vector<Var> vars;
  std::vector<Clause> clauses;
};

/// Connected components of the clause/variable incidence graph. Variables
/// that occur in no clause come out as singleton clause-free components.
/// Parts are ordered by their smallest variable.
std::vector<Component> decompose(const Component &c);

/// Canonical encoding of a component: its variables followed by its clauses
/// in sorted order. Equality compares the full bytes; the hash is only used
/// for bucketing.
struct ComponentKey {
  std::string bytes;
  std::array<std::uint64_t, 2> hash{};

  static ComponentKey of(const Component &c);
  bool operator==(const ComponentKey &o) const { return bytes == o.bytes; }
};

struct ComponentKeyHash {
  std::size_t operator()(const ComponentKey &k) const {
    return static_cast<std::size_t>(k.hash[0]);
  }
};

struct CacheEntry {
  BigCount count;
  std::optional<NodeId> node;
};

/// Least-recently-used component cache under a byte budget.
class ComponentCache {
public:
  explicit ComponentCache(std::size_t byte_budget = std::size_t{512} << 20)
      : budget_(byte_budget) {}

  const CacheEntry *lookup(const ComponentKey &key);
  void store(const ComponentKey &key, CacheEntry entry);

  std::size_t size() const { return map_.size(); }
  std::size_t bytes() const { return bytes_; }
  std::uint64_t evictions() const { return evictions_; }

private:
  struct Slot {
    CacheEntry entry;
    std::size_t bytes;
    std::list<const ComponentKey *>::iterator order;
  };

  std::size_t budget_;
  std::size_t bytes_ = 0;
  std::uint64_t evictions_ = 0;
  std::unordered_map<ComponentKey, Slot, ComponentKeyHash> map_;
  std::list<const ComponentKey *> order_; // front = most recent
};

struct CounterOptions {
  bool caching = true;
  /// Use the CDCL core for satisfiability checks of non-priority components.
  bool learning = false;
  double activity_weight = 1.0;
  double occurrence_weight = 1.0;
  std::size_t cache_bytes = std::size_t{512} << 20;
  Deadline deadline;
  /// Called once per counted component (after it is solved or found in the
  /// cache).
  std::function<void(const Component &, const BigCount &, bool from_cache)>
      on_component;
};

struct CounterStats {
  std::uint64_t decisions = 0;
  std::uint64_t cache_hits = 0;
  std::uint64_t cache_stores = 0;
  std::uint64_t cubes_detected = 0;
  std::uint64_t cache_evictions = 0;
  std::uint64_t sat_checks = 0;
};

struct CountResult {
  BigCount count;
  CounterStats stats;
};

/// Exact projected count by priority-first DPLL with decomposition, caching
/// and cube detection. Throws LimitExceeded when the deadline passes.
CountResult count_projected(const ProjectedCnf &pf, CounterOptions opts = {});

/// Decision-DNNF of f, built by running the counter with every variable as
/// priority and recording the search.
NnfGraph compile_ddnnf(const CnfFormula &f, CounterOptions opts = {},
                       CounterStats *stats = nullptr);

} // namespace pmc
