#include "game.hpp"

#include <algorithm>
#include <thread>

namespace hyperplan {

GameTree::GameTree(const CoreFormula& f, std::vector<GameLevel> levels, std::uint64_t budget)
    : f_(f), levels_(std::move(levels)), budget_(budget) {}

bool GameTree::rec(Evaluator& ev, std::size_t level, std::vector<int>& choice, bool& aborted) {
  if (level == levels_.size()) return ev.root();
  const GameLevel& L = levels_[level];
  const bool exists = L.kind == Quant::Exists;
  for (std::size_t k = 0; k < L.traces.size(); ++k) {
    const std::uint64_t n = ++nodes_;
    if (n > budget_ || (deadline_ && (n & 1023) == 0 && std::chrono::steady_clock::now() >= *deadline_)) {
      aborted = true;
      return false;
    }
    ev.bind(L.path, L.traces[k]);
    const bool r = rec(ev, level + 1, choice, aborted);
    if (aborted) return false;
    if (r == exists) {
      choice[level] = static_cast<int>(k);
      return r;
    }
  }
  return !exists;
}

std::optional<bool> GameTree::run(int workers) {
  choice_.assign(levels_.size(), -1);
  auto make_eval = [&] {
    Evaluator ev(f_);
    for (const auto& [path, trace] : fixed_) ev.bind(path, trace);
    return ev;
  };
  if (levels_.empty()) {
    Evaluator ev = make_eval();
    return ev.root();
  }
  const GameLevel& top = levels_[0];
  const bool exists = top.kind == Quant::Exists;
  const std::size_t n = top.traces.size();
  workers = std::max(1, std::min<int>(workers, static_cast<int>(n)));

  // each worker scans a contiguous chunk for its first decisive index
  struct Found {
    std::size_t index = SIZE_MAX;
    std::vector<int> choice;
    bool aborted = false;
  };
  std::vector<Found> found(static_cast<std::size_t>(workers));
  auto scan = [&](int w) {
    const std::size_t lo = n * static_cast<std::size_t>(w) / static_cast<std::size_t>(workers);
    const std::size_t hi = n * static_cast<std::size_t>(w + 1) / static_cast<std::size_t>(workers);
    Evaluator ev = make_eval();
    Found& out = found[static_cast<std::size_t>(w)];
    std::vector<int> choice(levels_.size(), -1);
    for (std::size_t k = lo; k < hi; ++k) {
      const std::uint64_t c = ++nodes_;
      if (c > budget_ || (deadline_ && std::chrono::steady_clock::now() >= *deadline_)) {
        out.aborted = true;
        return;
      }
      ev.bind(top.path, top.traces[k]);
      const bool r = rec(ev, 1, choice, out.aborted);
      if (out.aborted) return;
      if (r == exists) {
        choice[0] = static_cast<int>(k);
        out.index = k;
        out.choice = choice;
        return;
      }
    }
  };
  if (workers == 1) {
    scan(0);
  } else {
    std::vector<std::thread> pool;
    for (int w = 0; w < workers; ++w) pool.emplace_back(scan, w);
    for (auto& t : pool) t.join();
  }
  // the first chunk holding a decisive index wins; an abort before it makes the answer unknown
  for (const auto& f : found) {
    if (f.aborted) return std::nullopt;
    if (f.index != SIZE_MAX) {
      choice_ = f.choice;
      return exists;
    }
  }
  return !exists;
}

}  // namespace hyperplan
