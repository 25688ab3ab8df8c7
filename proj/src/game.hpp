#pragma once

#include <atomic>
#include <chrono>
#include <cstdint>
#include <optional>
#include <vector>

#include "hyperplan/semantics.hpp"

namespace hyperplan {

/// One quantified level of a game tree: a prefix variable and its candidate strategies.
struct GameLevel {
  int path = 0;
  Quant kind = Quant::Exists;
  std::vector<Strategy> strategies;
  std::vector<Trace> traces;
};

/// Exhaustive evaluation of quantifier levels over explicit strategy lists, with
/// other prefix variables bound to fixed traces.
class GameTree {
 public:
  GameTree(const CoreFormula& f, std::vector<GameLevel> levels, std::uint64_t budget);

  void fix(int path, Trace trace) { fixed_.emplace_back(path, std::move(trace)); }
  void set_deadline(std::optional<std::chrono::steady_clock::time_point> d) { deadline_ = d; }

  /// Truth of the quantified formula; nullopt when the node budget or deadline ran out.
  /// The top level is split across `workers` threads; the answer and the recorded
  /// choices do not depend on the worker count.
  std::optional<bool> run(int workers = 1);

  /// Strategy index per level along the decisive branch: the satisfying choice at
  /// existential levels and the refuting choice at universal levels.
  const std::vector<int>& choice() const { return choice_; }
  std::uint64_t nodes() const { return nodes_.load(); }

 private:
  bool rec(Evaluator& ev, std::size_t level, std::vector<int>& choice, bool& aborted);

  const CoreFormula& f_;
  std::vector<GameLevel> levels_;
  std::vector<std::pair<int, Trace>> fixed_;
  std::uint64_t budget_;
  std::optional<std::chrono::steady_clock::time_point> deadline_;
  std::atomic<std::uint64_t> nodes_{0};
  std::vector<int> choice_;
};

}  // namespace hyperplan
