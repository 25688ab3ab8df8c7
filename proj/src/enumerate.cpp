#include "game.hpp"
#include "hyperplan/error.hpp"
#include "hyperplan/solver.hpp"

namespace hyperplan {

Outcome solve_enumeration(const Problem& p, std::uint64_t budget) {
  Outcome out;
  std::vector<GameLevel> levels;
  for (int i = 0; i < p.num_paths(); ++i) {
    auto strategies = valid_strategies(p.dts, p.steps(i), budget);
    if (!strategies) {
      out.reason = "node budget exceeded";
      return out;
    }
    GameLevel L{i, p.quant(i), std::move(*strategies), {}};
    for (const auto& s : L.strategies) L.traces.push_back(correspond(p.dts, s));
    levels.push_back(std::move(L));
  }
  GameTree tree(p.formula, levels, budget);
  if (p.options.time_limit_s > 0)
    tree.set_deadline(std::chrono::steady_clock::now() +
                      std::chrono::duration_cast<std::chrono::steady_clock::duration>(
                          std::chrono::duration<double>(p.options.time_limit_s)));
  const auto r = tree.run(1);
  out.iterations = static_cast<int>(std::min<std::uint64_t>(tree.nodes(), INT32_MAX));
  if (!r) {
    out.reason = "node budget exceeded";
    return out;
  }
  if (!*r) {
    out.status = Outcome::Status::Unrealizable;
    return out;
  }
  out.status = Outcome::Status::Realizable;
  const int lead = leading_exists(p.formula);
  for (int i = 0; i < lead; ++i)
    out.witness[p.formula.prefix[static_cast<std::size_t>(i)].var] =
        levels[static_cast<std::size_t>(i)].strategies[static_cast<std::size_t>(tree.choice()[static_cast<std::size_t>(i)])];
  return out;
}

}  // namespace hyperplan
