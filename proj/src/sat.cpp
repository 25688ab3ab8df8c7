#include "hyperplan/sat.hpp"

#include <algorithm>
#include <cstdlib>

namespace hyperplan {

void Cnf::normalize() {
  auto key = [](int l) { return std::make_pair(std::abs(l), l < 0); };
  for (auto& c : clauses) std::sort(c.begin(), c.end(), [&](int a, int b) { return key(a) < key(b); });
  std::sort(clauses.begin(), clauses.end(), [&](const std::vector<int>& a, const std::vector<int>& b) {
    return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end(),
                                        [&](int x, int y) { return key(x) < key(y); });
  });
}

bool Cnf::satisfied_by(const std::vector<bool>& model) const {
  for (const auto& c : clauses) {
    bool sat = false;
    for (int l : c) {
      const auto v = static_cast<std::size_t>(std::abs(l));
      if (v < model.size() && model[v] == (l > 0)) {
        sat = true;
        break;
      }
    }
    if (!sat) return false;
  }
  return true;
}

SatSolver::SatSolver() : rng_(0) {}

int SatSolver::new_var() {
  const auto v = static_cast<std::uint32_t>(assigns_.size());
  assigns_.push_back(kUndef);
  polarity_.push_back(false);
  levels_.push_back(0);
  reasons_.push_back(kNoReason);
  activity_.push_back(0.0);
  seen_.push_back(0);
  heap_pos_.push_back(-1);
  watches_.emplace_back();
  watches_.emplace_back();
  heap_insert(v);
  return static_cast<int>(v) + 1;
}

void SatSolver::set_random(std::uint64_t seed, double freq) {
  rng_.seed(seed);
  random_freq_ = freq;
}

// ---------------------------------------------------------------------------
// heap

void SatSolver::heap_up(std::size_t i) {
  const std::uint32_t v = heap_[i];
  while (i > 0) {
    const std::size_t parent = (i - 1) / 2;
    if (!heap_less(v, heap_[parent])) break;
    heap_[i] = heap_[parent];
    heap_pos_[heap_[i]] = static_cast<int>(i);
    i = parent;
  }
  heap_[i] = v;
  heap_pos_[v] = static_cast<int>(i);
}

void SatSolver::heap_down(std::size_t i) {
  const std::uint32_t v = heap_[i];
  for (;;) {
    std::size_t child = 2 * i + 1;
    if (child >= heap_.size()) break;
    if (child + 1 < heap_.size() && heap_less(heap_[child + 1], heap_[child])) ++child;
    if (!heap_less(heap_[child], v)) break;
    heap_[i] = heap_[child];
    heap_pos_[heap_[i]] = static_cast<int>(i);
    i = child;
  }
  heap_[i] = v;
  heap_pos_[v] = static_cast<int>(i);
}

void SatSolver::heap_insert(std::uint32_t v) {
  if (heap_pos_[v] >= 0) return;
  heap_.push_back(v);
  heap_up(heap_.size() - 1);
}

std::uint32_t SatSolver::heap_pop() {
  const std::uint32_t top = heap_[0];
  heap_pos_[top] = -1;
  const std::uint32_t last = heap_.back();
  heap_.pop_back();
  if (!heap_.empty()) {
    heap_[0] = last;
    heap_pos_[last] = 0;
    heap_down(0);
  }
  return top;
}

void SatSolver::bump_var(std::uint32_t v) {
  activity_[v] += var_inc_;
  if (activity_[v] > 1e100) {
    for (auto& a : activity_) a *= 1e-100;
    var_inc_ *= 1e-100;
  }
  if (heap_pos_[v] >= 0) heap_up(static_cast<std::size_t>(heap_pos_[v]));
}

void SatSolver::bump_clause(Clause& c) {
  c.activity += static_cast<float>(clause_inc_);
  if (c.activity > 1e20f) {
    for (auto& d : db_)
      if (d.learnt) d.activity *= 1e-20f;
    clause_inc_ *= 1e-20;
  }
}

// ---------------------------------------------------------------------------
// clauses

std::uint32_t SatSolver::attach(std::vector<Lit> lits, bool learnt, std::uint32_t lbd) {
  const auto cref = static_cast<std::uint32_t>(db_.size());
  Clause c;
  c.lits = std::move(lits);
  c.learnt = learnt;
  c.lbd = lbd;
  watches_[c.lits[0] ^ 1].push_back({cref, c.lits[1]});
  watches_[c.lits[1] ^ 1].push_back({cref, c.lits[0]});
  db_.push_back(std::move(c));
  if (learnt) ++num_learnts_;
  return cref;
}

void SatSolver::add_clause(std::span<const int> dimacs) {
  if (!ok_) return;
  cancel_until(0);
  std::vector<Lit> lits;
  lits.reserve(dimacs.size());
  for (int d : dimacs) {
    while (static_cast<int>(assigns_.size()) < std::abs(d)) new_var();
    lits.push_back(to_lit(d));
  }
  std::sort(lits.begin(), lits.end());
  std::vector<Lit> kept;
  for (std::size_t i = 0; i < lits.size(); ++i) {
    if (i > 0 && lits[i] == lits[i - 1]) continue;
    if (i > 0 && lits[i] == (lits[i - 1] ^ 1)) return;  // tautology
    const signed char v = value_of(lits[i]);
    if (v == 1) return;  // satisfied at level 0
    if (v == 0) continue;
    kept.push_back(lits[i]);
  }
  if (kept.empty()) {
    ok_ = false;
    return;
  }
  if (kept.size() == 1) {
    enqueue(kept[0], kNoReason);
    if (propagate() != kNoReason) ok_ = false;
    return;
  }
  attach(std::move(kept), false, 0);
}

bool SatSolver::locked(std::uint32_t cref) const {
  const Clause& c = db_[cref];
  const std::uint32_t v = var(c.lits[0]);
  return reasons_[v] == cref && value_of(c.lits[0]) == 1;
}

void SatSolver::reduce_db() {
  std::vector<std::uint32_t> cands;
  for (std::uint32_t i = 0; i < db_.size(); ++i)
    if (db_[i].learnt && !db_[i].deleted && db_[i].lbd > 2 && !locked(i)) cands.push_back(i);
  std::sort(cands.begin(), cands.end(), [&](std::uint32_t a, std::uint32_t b) {
    if (db_[a].lbd != db_[b].lbd) return db_[a].lbd > db_[b].lbd;
    if (db_[a].activity != db_[b].activity) return db_[a].activity < db_[b].activity;
    return a < b;
  });
  const std::size_t drop = cands.size() / 2;
  for (std::size_t i = 0; i < drop; ++i) {
    Clause& c = db_[cands[i]];
    c.deleted = true;
    c.lits.clear();
    c.lits.shrink_to_fit();
    --num_learnts_;
  }
  for (auto& ws : watches_)
    ws.erase(std::remove_if(ws.begin(), ws.end(), [&](const Watcher& w) { return db_[w.cref].deleted; }), ws.end());
}

// ---------------------------------------------------------------------------
// search

void SatSolver::enqueue(Lit l, std::uint32_t reason) {
  const std::uint32_t v = var(l);
  assigns_[v] = sign(l) ? 0 : 1;
  levels_[v] = level();
  reasons_[v] = reason;
  trail_.push_back(l);
}

std::uint32_t SatSolver::propagate() {
  while (qhead_ < trail_.size()) {
    const Lit p = trail_[qhead_++];  // p is true; visit clauses watching ~p
    auto& ws = watches_[p];
    const Lit false_lit = p ^ 1;
    std::size_t i = 0, j = 0;
    while (i < ws.size()) {
      const Watcher w = ws[i];
      if (value_of(w.blocker) == 1) {
        ws[j++] = ws[i++];
        continue;
      }
      Clause& c = db_[w.cref];
      if (c.lits[0] == false_lit) std::swap(c.lits[0], c.lits[1]);
      ++i;
      const Lit first = c.lits[0];
      if (first != w.blocker && value_of(first) == 1) {
        ws[j++] = {w.cref, first};
        continue;
      }
      bool moved = false;
      for (std::size_t k = 2; k < c.lits.size(); ++k) {
        if (value_of(c.lits[k]) != 0) {
          std::swap(c.lits[1], c.lits[k]);
          watches_[c.lits[1] ^ 1].push_back({w.cref, first});
          moved = true;
          break;
        }
      }
      if (moved) continue;
      ws[j++] = {w.cref, first};
      if (value_of(first) == 0) {
        while (i < ws.size()) ws[j++] = ws[i++];
        ws.resize(j);
        qhead_ = trail_.size();
        return w.cref;
      }
      enqueue(first, w.cref);
    }
    ws.resize(j);
  }
  return kNoReason;
}

bool SatSolver::redundant(Lit l) const {
  // local minimization: every other literal of the reason is already in the clause or fixed at level 0
  const std::uint32_t r = reasons_[var(l)];
  if (r == kNoReason) return false;
  for (Lit q : db_[r].lits) {
    const std::uint32_t v = var(q);
    if (v == var(l)) continue;
    if (!seen_[v] && levels_[v] > 0) return false;
  }
  return true;
}

void SatSolver::analyze(std::uint32_t confl, std::vector<Lit>& learnt, int& bt_level, std::uint32_t& lbd) {
  learnt.assign(1, 0);
  int pending = 0;
  Lit p = 0;
  bool have_p = false;
  std::size_t idx = trail_.size();
  do {
    Clause& c = db_[confl];
    if (c.learnt) bump_clause(c);
    for (Lit q : c.lits) {
      if (have_p && q == p) continue;
      const std::uint32_t v = var(q);
      if (seen_[v] || levels_[v] == 0) continue;
      seen_[v] = 1;
      bump_var(v);
      if (levels_[v] >= level()) ++pending;
      else learnt.push_back(q);
    }
    while (!seen_[var(trail_[--idx])]) {
    }
    p = trail_[idx];
    have_p = true;
    confl = reasons_[var(p)];
    seen_[var(p)] = 0;
    --pending;
  } while (pending > 0);
  learnt[0] = p ^ 1;

  std::vector<Lit> all(learnt.begin() + 1, learnt.end());
  std::size_t j = 1;
  for (std::size_t i = 1; i < learnt.size(); ++i)
    if (!redundant(learnt[i])) learnt[j++] = learnt[i];
  learnt.resize(j);
  for (Lit q : all) seen_[var(q)] = 0;

  bt_level = 0;
  if (learnt.size() > 1) {
    std::size_t max_i = 1;
    for (std::size_t i = 2; i < learnt.size(); ++i)
      if (levels_[var(learnt[i])] > levels_[var(learnt[max_i])]) max_i = i;
    std::swap(learnt[1], learnt[max_i]);
    bt_level = levels_[var(learnt[1])];
  }

  std::vector<int> lv;
  for (Lit q : learnt) lv.push_back(levels_[var(q)]);
  std::sort(lv.begin(), lv.end());
  lbd = static_cast<std::uint32_t>(std::unique(lv.begin(), lv.end()) - lv.begin());
}

void SatSolver::cancel_until(int lvl) {
  if (level() <= lvl) return;
  for (std::size_t i = trail_.size(); i > trail_lim_[static_cast<std::size_t>(lvl)]; --i) {
    const std::uint32_t v = var(trail_[i - 1]);
    polarity_[v] = assigns_[v] == 1;
    assigns_[v] = kUndef;
    reasons_[v] = kNoReason;
    heap_insert(v);
  }
  trail_.resize(trail_lim_[static_cast<std::size_t>(lvl)]);
  trail_lim_.resize(static_cast<std::size_t>(lvl));
  qhead_ = trail_.size();
}

std::optional<SatSolver::Lit> SatSolver::pick_branch() {
  if (random_freq_ > 0 && !heap_.empty() &&
      std::uniform_real_distribution<double>(0, 1)(rng_) < random_freq_) {
    const std::uint32_t v = heap_[std::uniform_int_distribution<std::size_t>(0, heap_.size() - 1)(rng_)];
    if (assigns_[v] == kUndef) return Lit(2 * v + (polarity_[v] ? 0 : 1));
  }
  while (!heap_.empty()) {
    const std::uint32_t v = heap_pop();
    if (assigns_[v] == kUndef) return Lit(2 * v + (polarity_[v] ? 0 : 1));
  }
  return std::nullopt;
}

bool SatSolver::out_of_budget() const {
  if (conflict_limit_ && conflicts_ - budget_start_ >= conflict_limit_) return true;
  if (deadline_ && (conflicts_ & 63) == 0 && std::chrono::steady_clock::now() >= *deadline_) return true;
  return false;
}

SatStatus SatSolver::search(std::uint64_t max_conflicts, std::span<const Lit> assumptions) {
  std::uint64_t local = 0;
  std::vector<Lit> learnt;
  for (;;) {
    const std::uint32_t confl = propagate();
    if (confl != kNoReason) {
      ++conflicts_;
      ++local;
      if (level() == 0) return SatStatus::Unsat;
      int bt = 0;
      std::uint32_t lbd = 0;
      analyze(confl, learnt, bt, lbd);
      cancel_until(bt);
      if (learnt.size() == 1) {
        enqueue(learnt[0], kNoReason);
      } else {
        const std::uint32_t cref = attach(learnt, true, lbd);
        bump_clause(db_[cref]);
        enqueue(learnt[0], cref);
      }
      var_inc_ /= 0.95;
      clause_inc_ /= 0.999;
      continue;
    }
    if (local >= max_conflicts || out_of_budget()) {
      cancel_until(0);
      return SatStatus::Aborted;
    }
    if (conflicts_ >= next_reduce_) {
      next_reduce_ = conflicts_ + 2000 + 300 * (next_reduce_ / 2000);
      reduce_db();
    }
    std::optional<Lit> next;
    while (level() < static_cast<int>(assumptions.size())) {
      const Lit a = assumptions[static_cast<std::size_t>(level())];
      const signed char v = value_of(a);
      if (v == 1) {
        trail_lim_.push_back(trail_.size());
      } else if (v == 0) {
        return SatStatus::Unsat;
      } else {
        next = a;
        break;
      }
    }
    if (!next) {
      next = pick_branch();
      if (!next) return SatStatus::Sat;
    }
    ++decisions_;
    trail_lim_.push_back(trail_.size());
    enqueue(*next, kNoReason);
  }
}

namespace {

double luby(double y, int x) {
  int size = 1, seq = 0;
  while (size < x + 1) {
    ++seq;
    size = 2 * size + 1;
  }
  while (size - 1 != x) {
    size = (size - 1) >> 1;
    --seq;
    x = x % size;
  }
  double r = 1;
  for (int i = 0; i < seq; ++i) r *= y;
  return r;
}

}  // namespace

SatStatus SatSolver::solve(std::span<const int> assumptions) {
  model_.clear();
  if (!ok_) return SatStatus::Unsat;
  cancel_until(0);
  std::vector<Lit> assume;
  for (int a : assumptions) {
    while (static_cast<int>(assigns_.size()) < std::abs(a)) new_var();
    assume.push_back(to_lit(a));
  }
  budget_start_ = conflicts_;
  SatStatus st = SatStatus::Aborted;
  for (int round = 0;; ++round) {
    const auto cap = static_cast<std::uint64_t>(luby(2, round) * 100);
    st = search(cap, assume);
    if (st != SatStatus::Aborted) break;
    if (out_of_budget()) break;
  }
  if (st == SatStatus::Sat) {
    model_.assign(assigns_.size() + 1, false);
    for (std::size_t v = 0; v < assigns_.size(); ++v) model_[v + 1] = assigns_[v] == 1;
  } else if (st == SatStatus::Unsat && assume.empty()) {
    ok_ = false;
  }
  cancel_until(0);
  return st;
}

SatResult sat_solve(const Cnf& cnf, std::span<const int> assumptions) {
  SatSolver s;
  while (s.num_vars() < cnf.vars) s.new_var();
  for (const auto& c : cnf.clauses) s.add_clause(c);
  SatResult r;
  r.status = s.solve(assumptions);
  if (r.status == SatStatus::Sat) {
    r.model = s.model();
    if (!cnf.satisfied_by(r.model)) std::abort();
  }
  return r;
}

}  // namespace hyperplan
