#include <algorithm>
#include <random>

#include "game.hpp"
#include "hyperplan/encoder.hpp"
#include "hyperplan/error.hpp"
#include "hyperplan/semantics.hpp"
#include "hyperplan/solver.hpp"

namespace hyperplan {
namespace {

// uniformly random valid strategy with `steps` actions, if one is found
std::optional<Strategy> random_strategy(const Dts& m, int steps, std::mt19937_64& rng) {
  for (int attempt = 0; attempt < 100; ++attempt) {
    Strategy s{std::uniform_int_distribution<int>(0, m.num_states() - 1)(rng), {}};
    int cur = s.init;
    bool ok = true;
    for (int t = 0; t < steps && ok; ++t) {
      std::vector<int> options;
      for (int a = 0; a < m.num_actions(); ++a)
        if (m.next(cur, a) >= 0) options.push_back(a);
      if (options.empty()) {
        ok = false;
        break;
      }
      const int a = options[std::uniform_int_distribution<std::size_t>(0, options.size() - 1)(rng)];
      s.actions.push_back(a);
      cur = m.next(cur, a);
    }
    if (ok) return s;
  }
  return std::nullopt;
}

// a witness strategy resized to `steps` actions with one or two random changes
std::optional<Strategy> mutate(const Dts& m, const Strategy& base, int steps, std::mt19937_64& rng) {
  Strategy s = base;
  s.actions.resize(static_cast<std::size_t>(steps), 0);
  for (std::size_t t = base.actions.size(); t < s.actions.size(); ++t)
    s.actions[t] = std::uniform_int_distribution<int>(0, std::max(0, m.num_actions() - 1))(rng);
  const int changes = std::uniform_int_distribution<int>(1, 2)(rng);
  for (int c = 0; c < changes; ++c) {
    const int where = std::uniform_int_distribution<int>(-1, steps - 1)(rng);
    if (where < 0) s.init = std::uniform_int_distribution<int>(0, m.num_states() - 1)(rng);
    else if (m.num_actions() > 0) s.actions[static_cast<std::size_t>(where)] = std::uniform_int_distribution<int>(0, m.num_actions() - 1)(rng);
  }
  if (!run(m, s)) return std::nullopt;
  return s;
}

}  // namespace

CheckResult check_witness(const Problem& p, const Witness& w, std::uint64_t budget) {
  const int lead = leading_exists(p.formula);
  std::vector<char> fixed(static_cast<std::size_t>(p.num_paths()), 0);
  std::vector<std::pair<int, Trace>> traces;
  for (const auto& [var, sigma] : w) {
    const int i = p.formula.path_index(var);
    if (i < 0 || i >= lead)
      throw Error(Errc::PrefixUnsupported, "witness variable " + var + " is not a leading existential");
    if (!run(p.dts, sigma)) throw Error(Errc::WitnessPathUndefined, "witness for " + var + " leaves the transition function");
    fixed[static_cast<std::size_t>(i)] = 1;
    traces.emplace_back(i, correspond(p.dts, sigma));
  }
  std::vector<int> free;
  for (int i = 0; i < p.num_paths(); ++i)
    if (!fixed[static_cast<std::size_t>(i)]) free.push_back(i);
  const bool universal_only =
      std::all_of(free.begin(), free.end(), [&](int i) { return p.quant(i) == Quant::ForAll; });

  CheckResult res;
  auto counterexample = [&](const std::vector<Strategy>& strategies) {
    Witness cex;
    for (std::size_t k = 0; k < free.size(); ++k)
      cex[p.formula.prefix[static_cast<std::size_t>(free[k])].var] = strategies[k];
    return cex;
  };

  // exhaustive game tree when the remaining space fits the budget
  std::uint64_t leaves = 1;
  for (int i : free) {
    const std::uint64_t c = count_valid_strategies(p.dts, p.steps(i));
    leaves = (c != 0 && leaves > budget / c) ? budget + 1 : leaves * c;
  }
  if (leaves <= budget) {
    std::vector<GameLevel> levels;
    for (int i : free) {
      GameLevel L{i, p.quant(i), *valid_strategies(p.dts, p.steps(i), budget), {}};
      for (const auto& s : L.strategies) L.traces.push_back(correspond(p.dts, s));
      levels.push_back(std::move(L));
    }
    // every internal node and leaf is visited at most once
    GameTree tree(p.formula, levels, UINT64_MAX);
    for (auto& [i, t] : traces) tree.fix(i, t);
    res.holds = *tree.run(std::max(1, p.options.workers));
    res.verified = Verification::Exhaustive;
    if (!res.holds && universal_only && !free.empty()) {
      std::vector<Strategy> strategies;
      for (std::size_t k = 0; k < levels.size(); ++k)
        strategies.push_back(levels[k].strategies[static_cast<std::size_t>(tree.choice()[k])]);
      res.counterexample = counterexample(strategies);
    }
    return res;
  }

  res.verified = Verification::Sampled;
  if (!universal_only) {
    if (!is_exists_forall(p.formula)) throw Error(Errc::PrefixUnsupported, "space exceeds the check budget");
    // existential variables remain: decide them by counterexample-guided search
    const Outcome o = solve_cegis_fixed(p, w, p.options.max_iters);
    res.holds = o.realizable();
    if (std::none_of(free.begin(), free.end(), [&](int i) { return p.quant(i) == Quant::ForAll; }))
      res.verified = Verification::Exhaustive;
    return res;
  }

  // symbolic search for a violation
  {
    SatSolver s;
    GateBuilder g(s);
    std::vector<std::unique_ptr<PathLits>> owned;
    std::vector<PathLits*> paths(static_cast<std::size_t>(p.num_paths()), nullptr);
    std::vector<SymbolicPath*> univ;
    for (const auto& [var, sigma] : w) {
      owned.push_back(std::make_unique<ConstPath>(p.dts, sigma, g));
      paths[static_cast<std::size_t>(p.formula.path_index(var))] = owned.back().get();
    }
    for (int i : free) {
      auto sp = std::make_unique<SymbolicPath>(encode_path_constraint(s, p.dts, p.steps(i)));
      univ.push_back(sp.get());
      paths[static_cast<std::size_t>(i)] = sp.get();
      owned.push_back(std::move(sp));
    }
    Unroller u(p.formula, p.dts, g, paths);
    s.add({-u.root()});
    if (s.solve() == SatStatus::Sat) {
      std::vector<Strategy> strategies;
      for (auto* sp : univ) strategies.push_back(decode(sp->block(), s.model()));
      res.holds = false;
      res.counterexample = counterexample(strategies);
      return res;
    }
  }

  // random sampling: uniform paths and perturbed witness strategies
  std::mt19937_64 rng(p.options.seed);
  Evaluator ev(p.formula);
  for (auto& [i, t] : traces) ev.bind(i, t);
  std::vector<Strategy> bases;
  for (const auto& [var, sigma] : w) bases.push_back(sigma);
  for (int n = 0; n < p.options.samples; ++n) {
    std::vector<Strategy> strategies;
    bool ok = true;
    for (int i : free) {
      std::optional<Strategy> s;
      if (!bases.empty() && (n & 1))
        s = mutate(p.dts, bases[std::uniform_int_distribution<std::size_t>(0, bases.size() - 1)(rng)], p.steps(i), rng);
      if (!s) s = random_strategy(p.dts, p.steps(i), rng);
      if (!s) {
        ok = false;
        break;
      }
      ev.bind(i, correspond(p.dts, *s));
      strategies.push_back(std::move(*s));
    }
    if (!ok) continue;
    if (!ev.root()) {
      res.holds = false;
      res.counterexample = counterexample(strategies);
      return res;
    }
  }
  res.holds = true;
  return res;
}

}  // namespace hyperplan
