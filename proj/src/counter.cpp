#include "pmc/counter.hpp"

#include <algorithm>
#include <cstring>
#include <numeric>
#include <string_view>

#include "pmc/cdcl.hpp"
#include "pmc/errors.hpp"

namespace pmc {
namespace {

std::uint64_t mix64(std::uint64_t x) {
  x ^= x >> 30;
  x *= 0xbf58476d1ce4e5b9ULL;
  x ^= x >> 27;
  x *= 0x94d049bb133111ebULL;
  x ^= x >> 31;
  return x;
}

std::uint64_t hash_bytes(std::string_view s, std::uint64_t seed) {
  std::uint64_t h = mix64(seed ^ (s.size() * 0x9e3779b97f4a7c15ULL));
  for (std::size_t i = 0; i < s.size(); i += 8) {
    std::uint64_t w = 0;
    std::memcpy(&w, s.data() + i, std::min<std::size_t>(8, s.size() - i));
    h = mix64(h ^ w) + 0x9e3779b97f4a7c15ULL;
  }
  return mix64(h);
}

void put_u32(std::string &out, std::uint32_t x) {
  char b[4];
  std::memcpy(b, &x, 4);
  out.append(b, 4);
}

std::size_t count_bytes(const BigCount &c) {
  return c == 0 ? 8 : static_cast<std::size_t>(msb(c) / 8 + 8);
}

} // namespace

std::vector<Component> decompose(const Component &c) {
  const auto &vars = c.vars;
  std::vector<std::size_t> parent(vars.size());
  std::iota(parent.begin(), parent.end(), std::size_t{0});
  auto find = [&](std::size_t i) {
    while (parent[i] != i) {
      parent[i] = parent[parent[i]];
      i = parent[i];
    }
    return i;
  };
  auto index_of = [&](Var v) {
    auto it = std::lower_bound(vars.begin(), vars.end(), v);
    if (it == vars.end() || *it != v)
      throw InternalError("clause mentions a variable outside its component");
    return static_cast<std::size_t>(it - vars.begin());
  };

  std::vector<std::size_t> clause_anchor(c.clauses.size());
  for (std::size_t k = 0; k < c.clauses.size(); ++k) {
    const auto &cl = c.clauses[k];
    if (cl.empty())
      throw InternalError("empty clause inside a component");
    std::size_t first = index_of(cl.lits()[0].var());
    clause_anchor[k] = first;
    for (Lit l : cl) {
      std::size_t a = find(first), b = find(index_of(l.var()));
      if (a != b)
        parent[std::max(a, b)] = std::min(a, b);
    }
  }

  std::vector<Component> parts;
  std::vector<std::size_t> part_of(vars.size(), SIZE_MAX);
  for (std::size_t i = 0; i < vars.size(); ++i) {
    std::size_t r = find(i);
    if (part_of[r] == SIZE_MAX) {
      part_of[r] = parts.size();
      parts.emplace_back();
    }
    parts[part_of[r]].vars.push_back(vars[i]);
  }
  for (std::size_t k = 0; k < c.clauses.size(); ++k)
    parts[part_of[find(clause_anchor[k])]].clauses.push_back(c.clauses[k]);
  return parts;
}

ComponentKey ComponentKey::of(const Component &c) {
  ComponentKey k;
  std::vector<const Clause *> sorted;
  sorted.reserve(c.clauses.size());
  std::size_t lits = 0;
  for (const auto &cl : c.clauses) {
    sorted.push_back(&cl);
    lits += cl.size() + 1;
  }
  std::sort(sorted.begin(), sorted.end(),
            [](const Clause *a, const Clause *b) { return *a < *b; });
  k.bytes.reserve(4 * (c.vars.size() + 1 + lits));
  for (Var v : c.vars)
    put_u32(k.bytes, v);
  put_u32(k.bytes, UINT32_MAX);
  for (const Clause *cl : sorted) {
    for (Lit l : *cl)
      put_u32(k.bytes, l.code());
    put_u32(k.bytes, 0); // no literal has code 0
  }
  k.hash = {hash_bytes(k.bytes, 0x243f6a8885a308d3ULL),
            hash_bytes(k.bytes, 0x13198a2e03707344ULL)};
  return k;
}

const CacheEntry *ComponentCache::lookup(const ComponentKey &key) {
  auto it = map_.find(key);
  if (it == map_.end())
    return nullptr;
  order_.splice(order_.begin(), order_, it->second.order);
  return &it->second.entry;
}

void ComponentCache::store(const ComponentKey &key, CacheEntry entry) {
  if (map_.count(key))
    return;
  std::size_t cost = 2 * key.bytes.size() + count_bytes(entry.count) + 96;
  if (cost > budget_)
    return;
  while (bytes_ + cost > budget_ && !order_.empty()) {
    const ComponentKey *victim = order_.back();
    auto it = map_.find(*victim);
    bytes_ -= it->second.bytes;
    order_.pop_back();
    map_.erase(it);
    ++evictions_;
  }
  auto [it, inserted] = map_.emplace(key, Slot{std::move(entry), cost, {}});
  order_.push_front(&it->first);
  it->second.order = order_.begin();
  bytes_ += cost;
}

namespace {

class Engine {
public:
  struct Result {
    BigCount count;
    NodeId node = 0;
  };

  Engine(const ProjectedCnf &pf, const CounterOptions &opts,
         NnfBuilder *builder)
      : pf_(pf), opts_(opts), deadline_(opts.deadline), builder_(builder),
        cache_(opts.cache_bytes), val_(pf.num_vars() + 1, 0),
        activity_(pf.num_vars() + 1, 0.0), occ_(pf.num_vars() + 1, 0) {}

  Result run() {
    const auto &f = pf_.formula();
    if (f.has_empty_clause())
      return {0, false_node()};
    std::vector<Lit> fixed;
    bool ok = propagate(f.clauses, fixed);
    Component sub;
    if (ok) {
      for (Var v = 1; v <= pf_.num_vars(); ++v)
        if (val_[v] == 0)
          sub.vars.push_back(v);
      sub.clauses = reduce(f.clauses);
    }
    unassign(fixed);
    if (!ok)
      return {0, false_node()};
    Result r = solve_residual(fixed, std::move(sub));
    stats.cache_evictions = cache_.evictions();
    return r;
  }

  CounterStats stats;

private:
  NodeId false_node() { return builder_ ? builder_->constant(false) : 0; }

  void assign(Lit l) { val_[l.var()] = l.positive() ? 1 : -1; }
  int value(Lit l) const {
    int v = val_[l.var()];
    return l.positive() ? v : -v;
  }
  void unassign(const std::vector<Lit> &trail) {
    for (Lit l : trail)
      val_[l.var()] = 0;
  }

  // Unit propagation to fixpoint over `clauses`; new literals are appended to
  // `trail` and stay assigned until the caller undoes them.
  bool propagate(const std::vector<Clause> &clauses, std::vector<Lit> &trail) {
    for (;;) {
      deadline_.tick(stats.decisions);
      bool changed = false;
      for (const auto &c : clauses) {
        int open = 0;
        Lit last;
        bool sat = false;
        for (Lit l : c) {
          int v = value(l);
          if (v > 0) {
            sat = true;
            break;
          }
          if (v == 0) {
            ++open;
            last = l;
          }
        }
        if (sat)
          continue;
        if (open == 0) {
          on_conflict(c);
          return false;
        }
        if (open == 1) {
          assign(last);
          trail.push_back(last);
          changed = true;
        }
      }
      if (!changed)
        return true;
    }
  }

  std::vector<Clause> reduce(const std::vector<Clause> &clauses) const {
    std::vector<Clause> out;
    for (const auto &c : clauses) {
      std::vector<Lit> open;
      bool sat = false;
      for (Lit l : c) {
        int v = value(l);
        if (v > 0) {
          sat = true;
          break;
        }
        if (v == 0)
          open.push_back(l);
      }
      if (!sat)
        out.emplace_back(std::move(open));
    }
    return out;
  }

  void on_conflict(const Clause &c) {
    for (Lit l : c)
      activity_[l.var()] += activity_inc_;
    activity_inc_ /= 0.95;
    if (activity_inc_ > 1e100) {
      for (auto &a : activity_)
        a *= 1e-100;
      activity_inc_ *= 1e-100;
    }
  }

  std::uint64_t priority_count(const std::vector<Var> &vars) const {
    std::uint64_t u = 0;
    for (Var v : vars)
      u += pf_.is_priority(v) ? 1 : 0;
    return u;
  }

  // Multiplies the counts of the parts of `sub`, conjoined with the literals
  // fixed on the way here.
  Result solve_residual(const std::vector<Lit> &fixed, Component sub) {
    std::vector<NodeId> kids;
    if (builder_)
      for (Lit l : fixed)
        kids.push_back(builder_->literal(l));
    BigCount product = 1;
    if (sub.clauses.empty()) {
      ++stats.cubes_detected;
      product = pow2(priority_count(sub.vars));
    } else {
      for (const auto &part : decompose(sub)) {
        Result r = component(part);
        if (r.count == 0)
          return {0, false_node()};
        product *= r.count;
        if (builder_)
          kids.push_back(r.node);
      }
    }
    NodeId node = builder_ ? builder_->conjoin(std::move(kids)) : 0;
    return {std::move(product), node};
  }

  Result component(const Component &c) {
    if (c.clauses.empty()) {
      ++stats.cubes_detected;
      Result r{pow2(priority_count(c.vars)),
               builder_ ? builder_->constant(true) : 0};
      notify(c, r.count, false);
      return r;
    }
    std::optional<ComponentKey> key;
    if (opts_.caching) {
      key = ComponentKey::of(c);
      if (const CacheEntry *hit = cache_.lookup(*key)) {
        ++stats.cache_hits;
        notify(c, hit->count, true);
        return {hit->count, hit->node.value_or(0)};
      }
    }

    Result r;
    bool has_priority = priority_count(c.vars) > 0;
    if (!has_priority) {
      ++stats.sat_checks;
      r.count = satisfiable(c) ? 1 : 0;
    } else {
      Var v = pick(c);
      std::vector<NodeId> branches;
      for (bool positive : {true, false}) {
        Result b = branch(c, Lit(v, positive));
        r.count += b.count;
        if (builder_)
          branches.push_back(b.node);
      }
      if (builder_)
        r.node = builder_->disjoin(std::move(branches), v);
    }

    if (key) {
      ++stats.cache_stores;
      cache_.store(*key, {r.count, builder_ ? std::optional<NodeId>(r.node)
                                            : std::nullopt});
    }
    notify(c, r.count, false);
    return r;
  }

  Result branch(const Component &c, Lit d) {
    ++stats.decisions;
    deadline_.tick(stats.decisions);
    std::vector<Lit> trail{d};
    assign(d);
    bool ok = propagate(c.clauses, trail);
    Component sub;
    if (ok) {
      for (Var v : c.vars)
        if (val_[v] == 0)
          sub.vars.push_back(v);
      sub.clauses = reduce(c.clauses);
    }
    unassign(trail);
    if (!ok)
      return {0, false_node()};
    return solve_residual(trail, std::move(sub));
  }

  Var pick(const Component &c) {
    for (const auto &cl : c.clauses)
      for (Lit l : cl)
        ++occ_[l.var()];
    Var best = 0;
    double best_score = -1;
    for (Var v : c.vars) {
      if (!pf_.is_priority(v))
        continue;
      double s = opts_.activity_weight * activity_[v] +
                 opts_.occurrence_weight * occ_[v];
      if (s > best_score) {
        best = v;
        best_score = s;
      }
    }
    for (const auto &cl : c.clauses)
      for (Lit l : cl)
        occ_[l.var()] = 0;
    return best;
  }

  bool satisfiable(const Component &c) {
    if (opts_.learning)
      return satisfiable_cdcl(c);
    return satisfiable_dpll(c.clauses);
  }

  bool satisfiable_dpll(const std::vector<Clause> &clauses) {
    if (clauses.empty())
      return true;
    Var v = 0;
    std::uint32_t best = 0;
    for (const auto &cl : clauses)
      for (Lit l : cl)
        ++occ_[l.var()];
    for (const auto &cl : clauses)
      for (Lit l : cl) {
        Var u = l.var();
        if (occ_[u] > best || (occ_[u] == best && u < v)) {
          best = occ_[u];
          v = u;
        }
      }
    for (const auto &cl : clauses)
      for (Lit l : cl)
        occ_[l.var()] = 0;

    for (bool positive : {true, false}) {
      ++stats.decisions;
      deadline_.tick(stats.decisions);
      std::vector<Lit> trail{Lit(v, positive)};
      assign(trail[0]);
      bool ok = propagate(clauses, trail);
      std::vector<Clause> rest;
      if (ok)
        rest = reduce(clauses);
      unassign(trail);
      if (ok && satisfiable_dpll(rest))
        return true;
    }
    return false;
  }

  bool satisfiable_cdcl(const Component &c) {
    const auto &vars = c.vars;
    cdcl::SolverCore solver(static_cast<Var>(vars.size()));
    for (const auto &cl : c.clauses) {
      std::vector<Lit> lits;
      for (Lit l : cl) {
        auto it = std::lower_bound(vars.begin(), vars.end(), l.var());
        lits.emplace_back(static_cast<Var>(it - vars.begin()) + 1,
                          l.positive());
      }
      if (!solver.add_original(Clause(std::move(lits))))
        break;
    }
    bool sat = false;
    try {
      sat = solver.solve(deadline_);
    } catch (const LimitExceeded &) {
      stats.decisions += solver.stats().decisions;
      throw LimitExceeded("time limit reached", stats.decisions);
    }
    stats.decisions += solver.stats().decisions;
    return sat;
  }

  void notify(const Component &c, const BigCount &count, bool from_cache) {
    if (opts_.on_component)
      opts_.on_component(c, count, from_cache);
  }

  const ProjectedCnf &pf_;
  const CounterOptions &opts_;
  Deadline deadline_;
  NnfBuilder *builder_;
  ComponentCache cache_;
  std::vector<signed char> val_;
  std::vector<double> activity_;
  double activity_inc_ = 1.0;
  std::vector<std::uint32_t> occ_;
};

} // namespace

CountResult count_projected(const ProjectedCnf &pf, CounterOptions opts) {
  Engine e(pf, opts, nullptr);
  auto r = e.run();
  return {std::move(r.count), e.stats};
}

NnfGraph compile_ddnnf(const CnfFormula &f, CounterOptions opts,
                       CounterStats *stats) {
  ProjectedCnf pf(f);
  NnfBuilder builder(f.num_vars);
  Engine e(pf, opts, &builder);
  auto r = e.run();
  if (stats)
    *stats = e.stats;
  return builder.finish(r.node);
}

} // namespace pmc
