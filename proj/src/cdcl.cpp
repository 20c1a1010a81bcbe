#include "pmc/cdcl.hpp"

#include <algorithm>

#include "pmc/errors.hpp"

namespace pmc::cdcl {

std::uint64_t luby(std::uint64_t i) {
  // Find the finite subsequence containing index i and its position in it.
  std::uint64_t size = 1, seq = 0;
  while (size < i + 1) {
    ++seq;
    size = 2 * size + 1;
  }
  while (size - 1 != i) {
    size = (size - 1) >> 1;
    --seq;
    i = i % size;
  }
  return std::uint64_t{1} << seq;
}

SolverCore::SolverCore(Var num_vars, Options opts)
    : num_vars_(num_vars), opts_(opts), watches_(2 * (num_vars + 1)),
      assigns_(num_vars + 1, Value::Unassigned), level_(num_vars + 1, 0),
      reason_(num_vars + 1, kNoReason), phase_(num_vars + 1, 0),
      seen_(num_vars + 1, 0), activity_(num_vars + 1, 0.0),
      heap_pos_(num_vars + 1, -1) {
  for (Var v = 1; v <= num_vars_; ++v)
    heap_insert(v);
}

Value SolverCore::value(Lit l) const {
  Value v = assigns_[l.var()];
  if (v == Value::Unassigned || l.positive())
    return v;
  return v == Value::True ? Value::False : Value::True;
}

ClauseRef SolverCore::store(std::vector<Lit> lits, ClauseKind kind, int tag) {
  clauses_.push_back({std::move(lits), kind, tag, 0.0f, false});
  return static_cast<ClauseRef>(clauses_.size() - 1);
}

void SolverCore::attach(ClauseRef cr) {
  const auto &c = clauses_[cr].lits;
  watches_[(~c[0]).code()].push_back({cr, c[1]});
  watches_[(~c[1]).code()].push_back({cr, c[0]});
}

void SolverCore::remove(ClauseRef cr) {
  auto &c = clauses_[cr];
  if (c.deleted)
    return;
  c.deleted = true;
  if (c.lits.size() >= 2)
    dead_watchers_ += 2;
  // Keep the literals of a clause that is still a reason; analysis never
  // reads reasons below the protected levels, but the data must stay valid.
  if (!locked(cr)) {
    c.lits.clear();
    c.lits.shrink_to_fit();
  }
}

void SolverCore::purge_watches() {
  for (auto &ws : watches_)
    ws.erase(std::remove_if(ws.begin(), ws.end(),
                            [&](const Watcher &w) {
                              return clauses_[w.cref].deleted;
                            }),
             ws.end());
  dead_watchers_ = 0;
}

bool SolverCore::locked(ClauseRef cr) const {
  const auto &c = clauses_[cr].lits;
  if (c.empty())
    return false;
  Var v = c[0].var();
  return reason_[v] == cr && value(c[0]) == Value::True;
}

void SolverCore::enqueue(Lit l, ClauseRef reason) {
  Var v = l.var();
  assigns_[v] = l.positive() ? Value::True : Value::False;
  level_[v] = decision_level();
  reason_[v] = reason;
  trail_.push_back(l);
}

bool SolverCore::add_original(const Clause &c) {
  if (inconsistent_)
    return false;
  if (c.is_tautology())
    return true;
  std::vector<Lit> lits;
  for (Lit l : c) {
    Value v = value(l);
    if (v == Value::True && level_[l.var()] == 0)
      return true;
    if (v == Value::False && level_[l.var()] == 0)
      continue;
    lits.push_back(l);
  }
  ++num_original_;
  if (lits.empty()) {
    inconsistent_ = true;
    return false;
  }
  if (lits.size() == 1) {
    Lit unit = lits[0];
    enqueue(unit, store(std::move(lits), ClauseKind::Original, 0));
    return true;
  }
  attach(store(std::move(lits), ClauseKind::Original, 0));
  return true;
}

void SolverCore::decide(Lit l) {
  ++stats_.decisions;
  trail_lim_.push_back(trail_.size());
  enqueue(l, kNoReason);
}

void SolverCore::backtrack(int level) {
  if (decision_level() <= level)
    return;
  for (std::size_t i = trail_.size(); i-- > trail_lim_[level];) {
    Var v = trail_[i].var();
    phase_[v] = trail_[i].positive() ? 1 : 0;
    assigns_[v] = Value::Unassigned;
    reason_[v] = kNoReason;
    heap_insert(v);
  }
  trail_.resize(trail_lim_[level]);
  trail_lim_.resize(level);
  qhead_ = trail_.size();
}

std::optional<ClauseRef> SolverCore::propagate(Deadline &deadline) {
  while (qhead_ < trail_.size()) {
    Lit p = trail_[qhead_++];
    ++stats_.propagations;
    deadline.tick(stats_.decisions);
    Lit false_lit = ~p;
    auto &ws = watches_[p.code()];
    std::size_t i = 0, j = 0;
    while (i < ws.size()) {
      Watcher w = ws[i];
      auto &cd = clauses_[w.cref];
      if (cd.deleted) {
        ++i;
        if (dead_watchers_ > 0)
          --dead_watchers_;
        continue;
      }
      if (value(w.blocker) == Value::True) {
        ws[j++] = ws[i++];
        continue;
      }
      auto &c = cd.lits;
      if (c[0] == false_lit)
        std::swap(c[0], c[1]);
      ++i;
      Lit first = c[0];
      Watcher nw{w.cref, first};
      if (first != w.blocker && value(first) == Value::True) {
        ws[j++] = nw;
        continue;
      }
      bool moved = false;
      for (std::size_t k = 2; k < c.size(); ++k)
        if (value(c[k]) != Value::False) {
          std::swap(c[1], c[k]);
          watches_[(~c[1]).code()].push_back({w.cref, first});
          moved = true;
          break;
        }
      if (moved)
        continue;
      ws[j++] = nw;
      if (value(first) == Value::False) {
        while (i < ws.size())
          ws[j++] = ws[i++];
        ws.resize(j);
        qhead_ = trail_.size();
        return w.cref;
      }
      enqueue(first, w.cref);
    }
    ws.resize(j);
  }
  return std::nullopt;
}

SolverCore::Analysis SolverCore::analyze(ClauseRef conflict) {
  ++stats_.conflicts;
  ++conflicts_since_restart_;
  Analysis out;
  out.learnt.push_back(Lit()); // asserting literal goes here
  int path = 0;
  std::optional<Lit> p;
  std::size_t index = trail_.size();
  ClauseRef cr = conflict;
  const int current = decision_level();
  std::vector<Var> touched;

  do {
    if (cr == kNoReason)
      throw InternalError("conflict analysis reached a decision literal");
    auto &cd = clauses_[cr];
    if (cd.kind == ClauseKind::Learned)
      bump_clause(cd);
    for (std::size_t k = p ? 1 : 0; k < cd.lits.size(); ++k) {
      Lit q = cd.lits[k];
      Var v = q.var();
      if (seen_[v] || level_[v] == 0)
        continue;
      seen_[v] = 1;
      touched.push_back(v);
      bump_var(v);
      if (level_[v] >= current)
        ++path;
      else
        out.learnt.push_back(q);
    }
    if (!p && path == 0)
      throw InternalError("conflict clause has no literal at the current level");
    while (!seen_[trail_[--index].var()])
      ;
    p = trail_[index];
    cr = reason_[p->var()];
    seen_[p->var()] = 0;
    --path;
  } while (path > 0);
  out.learnt[0] = ~*p;

  for (Var v : touched)
    seen_[v] = 0;

  if (out.learnt.size() > 1) {
    std::size_t best = 1;
    for (std::size_t k = 2; k < out.learnt.size(); ++k)
      if (level_[out.learnt[k].var()] > level_[out.learnt[best].var()])
        best = k;
    std::swap(out.learnt[1], out.learnt[best]);
    out.backjump_level = level_[out.learnt[1].var()];
  }
  return out;
}

void SolverCore::add_learned(std::vector<Lit> learnt) {
  Lit asserting = learnt[0];
  if (learnt.size() == 1) {
    enqueue(asserting, store(std::move(learnt), ClauseKind::Learned, 0));
    return;
  }
  ClauseRef cr = store(std::move(learnt), ClauseKind::Learned, 0);
  attach(cr);
  bump_clause(clauses_[cr]);
  learned_.push_back(cr);
  enqueue(asserting, cr);
}

void SolverCore::decay_activities() {
  var_inc_ /= opts_.var_decay;
  clause_inc_ /= opts_.clause_decay;
}

void SolverCore::bump_var(Var v) {
  activity_[v] += var_inc_;
  if (activity_[v] > 1e100) {
    for (auto &a : activity_)
      a *= 1e-100;
    var_inc_ *= 1e-100;
  }
  if (heap_pos_[v] >= 0)
    heap_up(static_cast<std::size_t>(heap_pos_[v]));
}

void SolverCore::bump_clause(ClauseData &c) {
  c.activity += static_cast<float>(clause_inc_);
  if (c.activity > 1e20f) {
    for (ClauseRef r : learned_)
      clauses_[r].activity *= 1e-20f;
    clause_inc_ *= 1e-20;
  }
}

std::optional<ClauseRef> SolverCore::add_blocking(const Clause &c, int tag) {
  std::vector<Lit> lits(c.begin(), c.end());
  for (Lit l : lits)
    if (value(l) == Value::True)
      throw InternalError("blocking clause is already satisfied when added");
  // Open literals first, then false ones by decreasing level, so the two
  // watches are the best available.
  std::stable_sort(lits.begin(), lits.end(), [&](Lit a, Lit b) {
    bool fa = value(a) == Value::False, fb = value(b) == Value::False;
    if (fa != fb)
      return !fa;
    return fa && level_[a.var()] > level_[b.var()];
  });
  ClauseRef cr = store(lits, ClauseKind::Blocking, tag);
  blocking_.push_back(cr);
  ++live_blocking_;
  if (lits.size() >= 2)
    attach(cr);
  if (lits.empty() || value(lits[0]) == Value::False)
    return cr;
  if (lits.size() == 1 || value(lits[1]) == Value::False)
    enqueue(lits[0], cr);
  return std::nullopt;
}

void SolverCore::delete_blocking_from(int tag) {
  std::vector<ClauseRef> kept;
  for (ClauseRef cr : blocking_) {
    if (clauses_[cr].tag >= tag) {
      remove(cr);
      --live_blocking_;
    } else {
      kept.push_back(cr);
    }
  }
  blocking_ = std::move(kept);
  if (dead_watchers_ > 4 * (num_original_ + learned_.size() + 16))
    purge_watches();
}

std::vector<Clause> SolverCore::blocking_clauses() const {
  std::vector<Clause> out;
  for (ClauseRef cr : blocking_)
    out.emplace_back(clauses_[cr].lits);
  return out;
}

std::optional<Lit> SolverCore::pick_branch() {
  while (!heap_.empty()) {
    Var v = heap_pop();
    if (assigns_[v] == Value::Unassigned)
      return Lit(v, phase_[v] != 0);
  }
  return std::nullopt;
}

bool SolverCore::restart_due() const {
  return opts_.restart_unit > 0 &&
         conflicts_since_restart_ >= luby(restart_index_) * opts_.restart_unit;
}

void SolverCore::note_restart() {
  ++stats_.restarts;
  ++restart_index_;
  conflicts_since_restart_ = 0;
}

bool SolverCore::reduce_due() const {
  std::size_t limit = learned_limit_;
  if (limit == 0)
    limit = opts_.learned_limit != 0
                ? opts_.learned_limit
                : std::max<std::size_t>(num_original_ / 3, 200);
  return learned_.size() >= limit;
}

void SolverCore::reduce_learned() {
  ++stats_.reductions;
  std::sort(learned_.begin(), learned_.end(), [&](ClauseRef a, ClauseRef b) {
    return clauses_[a].activity < clauses_[b].activity;
  });
  std::vector<ClauseRef> kept;
  const std::size_t half = learned_.size() / 2;
  for (std::size_t i = 0; i < learned_.size(); ++i) {
    ClauseRef cr = learned_[i];
    if (i < half && !locked(cr) && clauses_[cr].lits.size() > 2) {
      remove(cr);
      ++stats_.learned_deleted;
    } else {
      kept.push_back(cr);
    }
  }
  learned_ = std::move(kept);
  if (opts_.learned_limit == 0)
    learned_limit_ = std::max<std::size_t>(
        learned_limit_ == 0 ? std::max<std::size_t>(num_original_ / 3, 200)
                            : learned_limit_,
        200) * 11 / 10;
  if (dead_watchers_ > 4 * (num_original_ + learned_.size() + 16))
    purge_watches();
}

bool SolverCore::solve(Deadline &deadline) {
  if (inconsistent_)
    return false;
  for (;;) {
    auto conflict = propagate(deadline);
    if (conflict) {
      if (decision_level() == 0) {
        inconsistent_ = true;
        return false;
      }
      auto a = analyze(*conflict);
      backtrack(a.backjump_level);
      add_learned(std::move(a.learnt));
      decay_activities();
      continue;
    }
    if (restart_due()) {
      backtrack(0);
      note_restart();
    }
    if (reduce_due())
      reduce_learned();
    auto next = pick_branch();
    if (!next)
      return true;
    decide(*next);
  }
}

std::vector<char> SolverCore::model() const {
  std::vector<char> out(num_vars_ + 1, 0);
  for (Var v = 1; v <= num_vars_; ++v)
    out[v] = assigns_[v] == Value::True ? 1 : 0;
  return out;
}

bool SolverCore::heap_less(Var a, Var b) const {
  if (activity_[a] != activity_[b])
    return activity_[a] > activity_[b];
  return a < b;
}

void SolverCore::heap_insert(Var v) {
  if (heap_pos_[v] >= 0)
    return;
  heap_pos_[v] = static_cast<int>(heap_.size());
  heap_.push_back(v);
  heap_up(heap_.size() - 1);
}

void SolverCore::heap_up(std::size_t i) {
  Var v = heap_[i];
  while (i > 0) {
    std::size_t parent = (i - 1) / 2;
    if (!heap_less(v, heap_[parent]))
      break;
    heap_[i] = heap_[parent];
    heap_pos_[heap_[i]] = static_cast<int>(i);
    i = parent;
  }
  heap_[i] = v;
  heap_pos_[v] = static_cast<int>(i);
}

void SolverCore::heap_down(std::size_t i) {
  Var v = heap_[i];
  for (;;) {
    std::size_t child = 2 * i + 1;
    if (child >= heap_.size())
      break;
    if (child + 1 < heap_.size() && heap_less(heap_[child + 1], heap_[child]))
      ++child;
    if (!heap_less(heap_[child], v))
      break;
    heap_[i] = heap_[child];
    heap_pos_[heap_[i]] = static_cast<int>(i);
    i = child;
  }
  heap_[i] = v;
  heap_pos_[v] = static_cast<int>(i);
}

Var SolverCore::heap_pop() {
  Var top = heap_.front();
  heap_pos_[top] = -1;
  Var last = heap_.back();
  heap_.pop_back();
  if (!heap_.empty()) {
    heap_[0] = last;
    heap_pos_[last] = 0;
    heap_down(0);
  }
  return top;
}

} // namespace pmc::cdcl
