#pragma once

// Independent oracles and random generators shared by the test binaries.
// The oracles work on the surface syntax and recompute augmented labels and
// strategy sets from scratch, so they share no code with the evaluator,
// the encoder or the game tree.

#include <algorithm>
#include <functional>
#include <map>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "hyperplan/dts.hpp"
#include "hyperplan/formula.hpp"

#ifndef HYPERPLAN_ROOT_DIR
#define HYPERPLAN_ROOT_DIR "."
#endif

namespace oracle {

using hyperplan::Dts;
using hyperplan::Expr;
using hyperplan::ExprKind;
using hyperplan::ExprPtr;
using hyperplan::Formula;
using hyperplan::LabelSet;
using hyperplan::Quant;
using hyperplan::Strategy;
using hyperplan::Trace;

inline std::string root(const std::string& rel) { return std::string(HYPERPLAN_ROOT_DIR) + "/" + rel; }
inline std::string data(const std::string& name) { return root("tests/data/" + name); }

/// Label sequence of a strategy: base labels, state name, previous action or eps.
/// Empty when the strategy leaves the transition function.
inline Trace labels_along(const Dts& m, const Strategy& s) {
  Trace out;
  int cur = s.init;
  auto step = [&](int state, int prev) {
    LabelSet l = m.labels(state);
    l.insert(m.state_name(state));
    l.insert(prev < 0 ? std::string("eps") : m.action_name(prev));
    out.push_back(l);
  };
  step(cur, -1);
  for (int a : s.actions) {
    cur = m.next(cur, a);
    if (cur < 0) return {};
    step(cur, a);
  }
  return out;
}

/// All strategies with exactly `steps` actions whose path stays defined.
inline std::vector<Strategy> all_strategies(const Dts& m, int steps) {
  std::vector<Strategy> out;
  std::function<void(Strategy&, int, int)> go = [&](Strategy& s, int cur, int left) {
    if (left == 0) {
      out.push_back(s);
      return;
    }
    for (int a = 0; a < m.num_actions(); ++a) {
      const int nxt = m.next(cur, a);
      if (nxt < 0) continue;
      s.actions.push_back(a);
      go(s, nxt, left - 1);
      s.actions.pop_back();
    }
  };
  for (int s0 = 0; s0 < m.num_states(); ++s0) {
    Strategy s{s0, {}};
    go(s, s0, steps);
  }
  return out;
}

/// Direct reading of the surface semantics over stuttering finite traces.
class Surface {
 public:
  Surface(const std::map<std::string, Trace>& v, std::vector<std::string> actions, std::vector<std::string> observations)
      : v_(v), actions_(std::move(actions)), observations_(std::move(observations)) {
    for (const auto& [k, t] : v) last_ = std::max(last_, static_cast<int>(t.size()) - 1);
  }

  bool at(const Expr& e, int t) const {
    switch (e.kind) {
      case ExprKind::Atom: return holds(e.prop, e.path, t);
      case ExprKind::True: return true;
      case ExprKind::False: return false;
      case ExprKind::Not: return !at(*e.lhs, t);
      case ExprKind::And: return at(*e.lhs, t) && at(*e.rhs, t);
      case ExprKind::Or: return at(*e.lhs, t) || at(*e.rhs, t);
      case ExprKind::Implies: return !at(*e.lhs, t) || at(*e.rhs, t);
      case ExprKind::Next: return at(*e.lhs, t + 1);
      case ExprKind::Until: {
        for (int d = 0; d <= reach(e.bound, t); ++d) {
          if (at(*e.rhs, t + d)) return true;
          if (!at(*e.lhs, t + d)) return false;
        }
        return false;
      }
      case ExprKind::Finally:
        for (int d = 0; d <= reach(e.bound, t); ++d)
          if (at(*e.lhs, t + d)) return true;
        return false;
      case ExprKind::Globally:
        for (int d = 0; d <= reach(e.bound, t); ++d)
          if (!at(*e.lhs, t + d)) return false;
        return true;
      case ExprKind::ActEq: return same(actions_, e.path, e.path2, t);
      case ExprKind::ObsEq: return same(observations_, e.path, e.path2, t);
    }
    return false;
  }

 private:
  // beyond the last trace entry nothing changes, so longer delays add nothing
  int reach(int bound, int t) const {
    const int settle = std::max(0, last_ - t);
    return bound < 0 ? settle : std::min(bound, settle);
  }
  bool holds(const std::string& p, const std::string& path, int t) const {
    const Trace& tr = v_.at(path);
    return tr[static_cast<std::size_t>(std::min<int>(t, static_cast<int>(tr.size()) - 1))].count(p) > 0;
  }
  bool same(const std::vector<std::string>& alphabet, const std::string& a, const std::string& b, int t) const {
    for (const auto& p : alphabet)
      if (holds(p, a, t) != holds(p, b, t)) return false;
    return true;
  }

  const std::map<std::string, Trace>& v_;
  std::vector<std::string> actions_;
  std::vector<std::string> observations_;
  int last_ = 0;
};

/// Truth of a closed formula by enumerating every quantified path with the given step counts.
inline bool brute_force(const Formula& f, const Dts& m, const std::vector<int>& steps,
                        const std::vector<std::string>& observations) {
  std::vector<std::vector<Trace>> domains;
  for (int s : steps) {
    std::vector<Trace> d;
    for (const auto& sigma : all_strategies(m, s)) d.push_back(labels_along(m, sigma));
    domains.push_back(std::move(d));
  }
  std::map<std::string, Trace> v;
  std::function<bool(std::size_t)> go = [&](std::size_t i) -> bool {
    if (i == f.prefix.size()) return Surface(v, m.actions(), observations).at(*f.body, 0);
    const bool exists = f.prefix[i].kind == Quant::Exists;
    for (const auto& tr : domains[i]) {
      v[f.prefix[i].var] = tr;
      if (go(i + 1) == exists) {
        v.erase(f.prefix[i].var);
        return exists;
      }
    }
    v.erase(f.prefix[i].var);
    return !exists;
  };
  return go(0);
}

// ---------------------------------------------------------------------------
// random instances

/// States s0.., actions a0.., labels p and q (each used at least once), partial transitions.
inline Dts random_dts(std::mt19937_64& rng, int max_states, int max_actions, double density = 0.75) {
  std::uniform_int_distribution<int> ns(1, max_states), na(1, max_actions);
  const int n = ns(rng), k = na(rng);
  std::vector<std::string> states, actions;
  for (int i = 0; i < n; ++i) states.push_back("s" + std::to_string(i));
  for (int i = 0; i < k; ++i) actions.push_back("a" + std::to_string(i));
  Dts m(states, actions);
  std::bernoulli_distribution edge(density), lab(0.4);
  std::uniform_int_distribution<int> target(0, n - 1);
  for (int s = 0; s < n; ++s)
    for (int a = 0; a < k; ++a)
      if (edge(rng)) m.add_transition(s, a, target(rng));
  m.add_label(states.front(), "p");
  m.add_label(states.back(), "q");
  for (const auto& s : states)
    for (const char* p : {"p", "q"})
      if (lab(rng)) m.add_label(s, p);
  return m;
}

/// Random surface body over the given path variables with bounded temporal operators.
inline ExprPtr random_body(std::mt19937_64& rng, const Dts& m, const std::vector<std::string>& paths, int depth,
                           int max_bound = 2) {
  using namespace hyperplan;
  std::vector<std::string> props{"p", "q", "eps"};
  for (const auto& s : m.states()) props.push_back(s);
  for (const auto& a : m.actions()) props.push_back(a);
  auto pick = [&](const auto& v) { return v[std::uniform_int_distribution<std::size_t>(0, v.size() - 1)(rng)]; };
  std::uniform_int_distribution<int> bound(0, max_bound);
  if (depth == 0) {
    switch (std::uniform_int_distribution<int>(0, 9)(rng)) {
      case 0: return top();
      case 1: return bottom();
      case 2: return act_eq(pick(paths), pick(paths));
      case 3: return obs_eq(pick(paths), pick(paths));
      default: return atom(pick(props), pick(paths));
    }
  }
  auto sub = [&] { return random_body(rng, m, paths, depth - 1, max_bound); };
  switch (std::uniform_int_distribution<int>(0, 9)(rng)) {
    case 0: return neg(sub());
    case 1: return conj(sub(), sub());
    case 2: return disj(sub(), sub());
    case 3: return implies(sub(), sub());
    case 4: return next(sub());
    case 5: return until(sub(), sub(), bound(rng));
    case 6: return eventually(sub(), bound(rng));
    case 7: return always(sub(), bound(rng));
    default: return random_body(rng, m, paths, 0, max_bound);
  }
}

/// Random trace of length 1..max_len over labels drawn from `pool`.
inline Trace random_trace(std::mt19937_64& rng, const std::vector<std::string>& pool, int max_len) {
  Trace t(static_cast<std::size_t>(std::uniform_int_distribution<int>(1, max_len)(rng)));
  std::bernoulli_distribution in(0.4);
  for (auto& step : t)
    for (const auto& p : pool)
      if (in(rng)) step.insert(p);
  return t;
}

}  // namespace oracle
