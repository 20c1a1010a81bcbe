#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "pmc/cnf.hpp"
#include "pmc/deadline.hpp"

namespace pmc::cdcl {

using ClauseRef = std::uint32_t;
inline constexpr ClauseRef kNoReason = UINT32_MAX;

enum class ClauseKind : std::uint8_t { Original, Learned, Blocking };

enum class Value : std::int8_t { False = -1, Unassigned = 0, True = 1 };

struct Options {
  /// Learned clauses kept before a reduction; 0 picks a size-based default.
  std::size_t learned_limit = 0;
  /// Conflicts per Luby unit between restarts; 0 disables restarts.
  std::uint64_t restart_unit = 100;
  double var_decay = 0.95;
  double clause_decay = 0.999;
};

struct Stats {
  std::uint64_t decisions = 0;
  std::uint64_t propagations = 0;
  std::uint64_t conflicts = 0;
  std::uint64_t restarts = 0;
  std::uint64_t reductions = 0;
  std::uint64_t learned_deleted = 0;
};

/// Watched-literal CDCL machinery: trail with decision levels, 1UIP
/// analysis, VSIDS with phase saving, Luby restarts and learned-clause
/// reduction. Search policy (where to backjump, when to restart) is left to
/// the caller so controlled enumeration can keep a protected prefix.
class SolverCore {
public:
  explicit SolverCore(Var num_vars, Options opts = {});

  Var num_vars() const { return num_vars_; }

  /// Adds a problem clause at decision level 0. Returns false once the
  /// clause set is known to be unsatisfiable at level 0.
  bool add_original(const Clause &c);
  bool inconsistent() const { return inconsistent_; }

  // -- trail ---------------------------------------------------------------
  int decision_level() const { return static_cast<int>(trail_lim_.size()); }
  Value value(Lit l) const;
  Value value(Var v) const { return assigns_[v]; }
  int level(Var v) const { return level_[v]; }
  std::span<const Lit> trail() const { return trail_; }
  bool all_assigned() const { return trail_.size() == num_vars_; }

  /// Opens a new level with `l` as its decision.
  void decide(Lit l);
  /// Undo every level above `level`.
  void backtrack(int level);
  /// Unit propagation to fixpoint; returns the conflicting clause if any.
  std::optional<ClauseRef> propagate(Deadline &deadline);

  // -- learning ------------------------------------------------------------
  struct Analysis {
    std::vector<Lit> learnt; // learnt[0] is the asserting literal
    int backjump_level = 0;
  };
  /// First-UIP analysis of a conflict at the current (nonzero) level.
  Analysis analyze(ClauseRef conflict);
  /// Stores the learned clause and asserts learnt[0] at the current level,
  /// which the caller has already backjumped to.
  void add_learned(std::vector<Lit> learnt);
  void decay_activities();

  // -- blocking clauses ----------------------------------------------------
  /// Adds a clause mid-search. It is watched so that it remains correct
  /// after backtracking; if it is unit under the current trail its open
  /// literal is asserted, and if it is falsified the clause is returned as
  /// a conflict.
  std::optional<ClauseRef> add_blocking(const Clause &c, int tag);
  /// Deletes every blocking clause whose tag is >= `tag`.
  void delete_blocking_from(int tag);
  std::size_t live_blocking() const { return live_blocking_; }
  /// Live blocking clauses in insertion order.
  std::vector<Clause> blocking_clauses() const;

  // -- heuristics ----------------------------------------------------------
  /// Highest-activity unassigned variable with its saved phase.
  std::optional<Lit> pick_branch();
  /// Overrides the saved phase of l's variable with l's sign.
  void set_phase(Lit l) { phase_[l.var()] = l.positive() ? 1 : 0; }
  bool restart_due() const;
  void note_restart();
  bool reduce_due() const;
  void reduce_learned();

  /// Plain satisfiability search from level 0.
  bool solve(Deadline &deadline);
  /// Values of a total assignment, indexed by variable (entry 0 unused).
  std::vector<char> model() const;

  const Stats &stats() const { return stats_; }

private:
  struct ClauseData {
    std::vector<Lit> lits;
    ClauseKind kind = ClauseKind::Original;
    int tag = 0;
    float activity = 0;
    bool deleted = false;
  };
  struct Watcher {
    ClauseRef cref;
    Lit blocker;
  };

  ClauseRef store(std::vector<Lit> lits, ClauseKind kind, int tag);
  void attach(ClauseRef cr);
  void remove(ClauseRef cr);
  void purge_watches();
  void enqueue(Lit l, ClauseRef reason);
  bool locked(ClauseRef cr) const;
  void bump_var(Var v);
  void bump_clause(ClauseData &c);

  // Binary max-heap over variable activity.
  void heap_insert(Var v);
  void heap_up(std::size_t i);
  void heap_down(std::size_t i);
  Var heap_pop();
  bool heap_less(Var a, Var b) const;

  Var num_vars_;
  Options opts_;
  Stats stats_;
  bool inconsistent_ = false;

  std::vector<ClauseData> clauses_;
  std::vector<ClauseRef> learned_;
  std::vector<ClauseRef> blocking_;
  std::size_t live_blocking_ = 0;
  std::size_t dead_watchers_ = 0;
  std::size_t num_original_ = 0;
  std::vector<std::vector<Watcher>> watches_; // by literal code

  std::vector<Value> assigns_;
  std::vector<int> level_;
  std::vector<ClauseRef> reason_;
  std::vector<char> phase_;
  std::vector<char> seen_;
  std::vector<Lit> trail_;
  std::vector<std::size_t> trail_lim_;
  std::size_t qhead_ = 0;

  std::vector<double> activity_;
  double var_inc_ = 1.0;
  double clause_inc_ = 1.0;
  std::vector<Var> heap_;
  std::vector<int> heap_pos_; // -1 when absent

  std::uint64_t conflicts_since_restart_ = 0;
  std::uint64_t restart_index_ = 0;
  std::size_t learned_limit_ = 0;
};

/// The i-th element (0-based) of the Luby sequence 1,1,2,1,1,2,4,...
std::uint64_t luby(std::uint64_t i);

} // namespace pmc::cdcl
