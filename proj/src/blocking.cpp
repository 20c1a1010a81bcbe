#include "pmc/blocking.hpp"

#include <algorithm>

#include "pmc/errors.hpp"

namespace pmc {

std::vector<std::uint32_t> literal_frequencies(const CnfFormula &f) {
  std::vector<std::uint32_t> freq(2 * (f.num_vars + 1), 0);
  for (const auto &c : f.clauses)
    for (Lit l : c)
      ++freq[l.code()];
  return freq;
}

namespace {

// Higher frequency first, then smaller variable.
bool more_frequent(Lit a, Lit b, const std::vector<std::uint32_t> &freq) {
  if (freq[a.code()] != freq[b.code()])
    return freq[a.code()] > freq[b.code()];
  return a.var() < b.var();
}

} // namespace

Assignment shrink(const Assignment &theta, std::span<const Clause> clauses,
                  std::span<const Clause> blocking,
                  std::span<const Lit> controlled, const ProjectedCnf &pf,
                  const std::vector<std::uint32_t> &freq) {
  std::vector<char> in_s(2 * (pf.num_vars() + 1), 0);
  std::vector<Lit> s;
  auto add = [&](Lit l) {
    if (!in_s[l.code()]) {
      in_s[l.code()] = 1;
      s.push_back(l);
    }
  };
  for (Lit l : controlled)
    add(l);

  auto visit = [&](const Clause &c) {
    std::optional<Lit> best;
    bool hit = false;
    for (Lit l : c) {
      if (!theta.contains(l))
        continue;
      if (!pf.is_priority(l.var()) || in_s[l.code()]) {
        hit = true;
        break;
      }
      if (!best || more_frequent(l, *best, freq))
        best = l;
    }
    if (hit)
      return;
    if (!best)
      throw InternalError("shrink: assignment does not satisfy a clause");
    add(*best);
  };
  for (const auto &c : clauses)
    visit(c);
  for (const auto &c : blocking)
    visit(c);
  return Assignment(std::move(s));
}

std::optional<Lit> pick_controlled_literal(const Assignment &s,
                                           const cdcl::SolverCore &core,
                                           const std::vector<std::uint32_t> &freq) {
  std::optional<Lit> best;
  for (Lit l : s)
    if (core.value(l.var()) == cdcl::Value::Unassigned &&
        (!best || more_frequent(l, *best, freq)))
      best = l;
  return best;
}

EnumResult enumerate_count(const ProjectedCnf &pf, EnumOptions opts) {
  const auto &f = pf.formula();
  EnumResult out;
  cdcl::SolverCore core(pf.num_vars(), opts.cdcl);
  for (Lit l : opts.phase_hints)
    core.set_phase(l);
  for (const auto &c : f.clauses)
    if (!core.add_original(c))
      break;
  if (core.inconsistent())
    return out;

  const auto freq = literal_frequencies(f);
  const auto prio = pf.priority();
  const std::uint64_t num_prio = prio.size();
  Deadline deadline = opts.deadline;

  struct Controlled {
    Lit lit;
    bool flipped;
  };
  std::vector<Controlled> ctrl;
  int bl = 0;

  // Retract the deepest unflipped controlled decision and force its
  // negation. False once the controlled root is exhausted.
  auto controlled_backtrack = [&]() {
    while (!ctrl.empty() && ctrl.back().flipped) {
      ctrl.pop_back();
      --bl;
    }
    if (bl == 0)
      return false;
    Lit x = ctrl.back().lit;
    core.backtrack(bl - 1);
    core.delete_blocking_from(bl);
    ctrl.back() = {~x, true};
    core.decide(~x);
    return true;
  };

  std::vector<Lit> controlled_lits;
  try {
    for (;;) {
      auto conflict = core.propagate(deadline);
      if (conflict) {
        if (core.decision_level() <= bl) {
          if (!controlled_backtrack())
            break;
          continue;
        }
        auto a = core.analyze(*conflict);
        core.backtrack(std::max(a.backjump_level, bl));
        core.add_learned(std::move(a.learnt));
        core.decay_activities();
        continue;
      }
      if (core.restart_due()) {
        core.backtrack(bl);
        core.note_restart();
      }
      if (core.reduce_due())
        core.reduce_learned();
      if (auto next = core.pick_branch()) {
        core.decide(*next);
        continue;
      }

      // Total solution.
      auto trail = core.trail();
      Assignment theta(std::vector<Lit>(trail.begin(), trail.end()));
      Assignment s;
      if (opts.minimize) {
        controlled_lits.clear();
        for (const auto &c : ctrl)
          controlled_lits.push_back(c.lit);
        s = shrink(theta, f.clauses, core.blocking_clauses(), controlled_lits,
                   pf, freq);
      } else {
        s = theta.restrict_to(prio);
      }
      out.count += pow2(num_prio - s.size());
      ++out.stats.num_cubes;
      if (opts.record_cubes) {
        auto non_prio = pf.non_priority();
        out.cubes.push_back({s, theta.restrict_to(non_prio)});
      }

      core.backtrack(bl);
      auto x = pick_controlled_literal(s, core, freq);
      if (!x) {
        if (!controlled_backtrack())
          break;
        continue;
      }
      core.decide(*x);
      ctrl.push_back({*x, false});
      ++bl;
      auto clash = core.add_blocking(s.negation(), bl);
      out.stats.max_live_blocking =
          std::max<std::uint64_t>(out.stats.max_live_blocking,
                                  core.live_blocking());
      if (clash && !controlled_backtrack())
        break;
    }
  } catch (const LimitExceeded &) {
    throw LimitExceeded("time limit reached", core.stats().decisions);
  }

  out.stats.total_count = out.count;
  out.stats.decisions = core.stats().decisions;
  out.stats.conflicts = core.stats().conflicts;
  if (out.stats.num_cubes > 0)
    out.stats.r = log2_ratio(out.count, BigCount(out.stats.num_cubes));
  return out;
}

} // namespace pmc
