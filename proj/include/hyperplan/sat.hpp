#pragma once

#include <chrono>
#include <cstdint>
#include <optional>
#include <random>
#include <span>
#include <vector>

namespace hyperplan {

/// Literals are nonzero DIMACS-style integers: +v / -v for variable v >= 1.
class ClauseSink {
 public:
  virtual ~ClauseSink() = default;
  virtual int new_var() = 0;
  virtual void add_clause(std::span<const int> lits) = 0;
  virtual int num_vars() const = 0;

  void add(std::initializer_list<int> lits) { add_clause(std::span<const int>(lits.begin(), lits.size())); }
};

/// Plain clause list.
struct Cnf : ClauseSink {
  int vars = 0;
  std::vector<std::vector<int>> clauses;

  int new_var() override { return ++vars; }
  void add_clause(std::span<const int> lits) override { clauses.emplace_back(lits.begin(), lits.end()); }
  int num_vars() const override { return vars; }

  /// Sorts literals within clauses (by variable, then sign) and clauses lexicographically.
  void normalize();
  /// True iff `model` (indexed by variable, slot 0 unused) satisfies every clause.
  bool satisfied_by(const std::vector<bool>& model) const;
};

enum class SatStatus { Sat, Unsat, Aborted };

struct SatResult {
  SatStatus status = SatStatus::Aborted;
  std::vector<bool> model;  // model[v] for 1 <= v <= vars when Sat
};

/// Incremental CDCL solver: two-watched literals, first-UIP learning, VSIDS with
/// lowest-index tie-breaking, phase saving (false first), Luby restarts, and
/// LBD-based clause deletion. Clauses may be added between solve() calls.
class SatSolver : public ClauseSink {
 public:
  SatSolver();

  int new_var() override;
  void add_clause(std::span<const int> lits) override;
  int num_vars() const override { return static_cast<int>(assigns_.size()); }

  SatStatus solve(std::span<const int> assumptions = {});

  /// Model value of variable v after a Sat answer.
  bool value(int v) const { return model_[static_cast<std::size_t>(v)]; }
  bool lit_true(int lit) const { return lit > 0 ? value(lit) : !value(-lit); }
  const std::vector<bool>& model() const { return model_; }

  void set_deadline(std::optional<std::chrono::steady_clock::time_point> d) { deadline_ = d; }
  void set_conflict_limit(std::uint64_t n) { conflict_limit_ = n; }
  /// Enables randomized decisions with frequency `freq` (0 keeps the solver deterministic).
  void set_random(std::uint64_t seed, double freq);

  std::uint64_t conflicts() const { return conflicts_; }
  std::uint64_t decisions() const { return decisions_; }
  bool okay() const { return ok_; }

 private:
  using Lit = std::uint32_t;  // 2 * var + sign, var zero-based
  static constexpr std::uint32_t kNoReason = 0xffffffffu;
  static constexpr signed char kUndef = 2;

  struct Clause {
    std::vector<Lit> lits;
    float activity = 0;
    std::uint32_t lbd = 0;
    bool learnt = false;
    bool deleted = false;
  };
  struct Watcher {
    std::uint32_t cref;
    Lit blocker;
  };

  static Lit to_lit(int dimacs) { return dimacs > 0 ? Lit(2 * (dimacs - 1)) : Lit(2 * (-dimacs - 1) + 1); }
  static std::uint32_t var(Lit l) { return l >> 1; }
  static bool sign(Lit l) { return l & 1; }

  signed char value_of(Lit l) const {
    const signed char v = assigns_[var(l)];
    return v == kUndef ? kUndef : static_cast<signed char>(v ^ static_cast<signed char>(sign(l)));
  }
  int level() const { return static_cast<int>(trail_lim_.size()); }

  void enqueue(Lit l, std::uint32_t reason);
  std::uint32_t propagate();
  void analyze(std::uint32_t confl, std::vector<Lit>& learnt, int& bt_level, std::uint32_t& lbd);
  bool redundant(Lit l) const;
  void cancel_until(int lvl);
  std::uint32_t attach(std::vector<Lit> lits, bool learnt, std::uint32_t lbd);
  void reduce_db();
  bool locked(std::uint32_t cref) const;
  void bump_var(std::uint32_t v);
  void bump_clause(Clause& c);
  std::optional<Lit> pick_branch();
  SatStatus search(std::uint64_t max_conflicts, std::span<const Lit> assumptions);
  bool out_of_budget() const;

  // heap ordered by activity, ties to the lowest variable index
  bool heap_less(std::uint32_t a, std::uint32_t b) const {
    return activity_[a] > activity_[b] || (activity_[a] == activity_[b] && a < b);
  }
  void heap_insert(std::uint32_t v);
  void heap_up(std::size_t i);
  void heap_down(std::size_t i);
  std::uint32_t heap_pop();

  bool ok_ = true;
  std::vector<Clause> db_;
  std::vector<std::vector<Watcher>> watches_;
  std::vector<signed char> assigns_;
  std::vector<bool> polarity_;  // saved phase; true means assign the variable true
  std::vector<int> levels_;
  std::vector<std::uint32_t> reasons_;
  std::vector<Lit> trail_;
  std::vector<std::size_t> trail_lim_;
  std::size_t qhead_ = 0;
  std::vector<double> activity_;
  double var_inc_ = 1.0;
  double clause_inc_ = 1.0;
  std::vector<std::uint32_t> heap_;
  std::vector<int> heap_pos_;
  mutable std::vector<char> seen_;
  std::vector<bool> model_;
  std::size_t num_learnts_ = 0;
  std::uint64_t next_reduce_ = 2000;

  std::uint64_t conflicts_ = 0;
  std::uint64_t decisions_ = 0;
  std::uint64_t conflict_limit_ = 0;
  std::uint64_t budget_start_ = 0;
  std::optional<std::chrono::steady_clock::time_point> deadline_;
  double random_freq_ = 0;
  std::mt19937_64 rng_;
};

/// One-shot solve of a clause list; the model is checked against every clause.
SatResult sat_solve(const Cnf& cnf, std::span<const int> assumptions = {});

}  // namespace hyperplan
