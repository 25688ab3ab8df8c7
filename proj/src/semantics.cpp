#include "hyperplan/semantics.hpp"

#include <algorithm>

#include "hyperplan/error.hpp"

namespace hyperplan {

Evaluator::Evaluator(const CoreFormula& f) : f_(f) {
  const std::size_t n = f.nodes.size();
  atom_path_.assign(n, -1);
  atom_truth_.resize(n);
  saturation_.assign(n, 0);
  memo_.resize(n);
  trace_len_.assign(f.prefix.size(), 0);
  for (std::size_t i = 0; i < n; ++i) {
    const CoreNode& node = f.nodes[i];
    if (node.op != CoreOp::Atom || node.path.empty()) continue;
    const int pi = f.path_index(node.path);
    atom_path_[i] = pi < 0 ? -2 : pi;
  }
}

void Evaluator::bind(int path_index, const Trace& trace) {
  if (trace.empty()) throw Error(Errc::MissingPathVar, "empty trace for " + f_.prefix[static_cast<std::size_t>(path_index)].var);
  trace_len_[static_cast<std::size_t>(path_index)] = static_cast<int>(trace.size());
  for (std::size_t i = 0; i < f_.nodes.size(); ++i) {
    if (atom_path_[i] != path_index) continue;
    auto& truth = atom_truth_[i];
    truth.assign(trace.size(), 0);
    for (std::size_t t = 0; t < trace.size(); ++t) truth[t] = trace[t].count(f_.nodes[i].prop) ? 1 : 0;
  }
  dirty_ = true;
}

void Evaluator::unbind(int path_index) {
  trace_len_[static_cast<std::size_t>(path_index)] = 0;
  dirty_ = true;
}

int Evaluator::clamp(int node, int t) const { return std::min(t, saturation_[static_cast<std::size_t>(node)]); }

bool Evaluator::at(int node, int t) {
  if (dirty_) {
    // a node's value is constant from its saturation time on
    for (std::size_t i = 0; i < f_.nodes.size(); ++i) {
      const CoreNode& n = f_.nodes[i];
      auto sat = [&](int c) { return saturation_[static_cast<std::size_t>(c)]; };
      int s = 0;
      switch (n.op) {
        case CoreOp::Atom:
          s = atom_path_[i] >= 0 ? std::max(0, trace_len_[static_cast<std::size_t>(atom_path_[i])] - 1) : 0;
          break;
        case CoreOp::Not: s = sat(n.lhs); break;
        case CoreOp::And:
        case CoreOp::Until: s = std::max(sat(n.lhs), sat(n.rhs)); break;
        case CoreOp::Next: s = std::max(0, sat(n.lhs) - 1); break;
      }
      saturation_[i] = s;
      memo_[i].assign(static_cast<std::size_t>(s + 1), -1);
    }
    dirty_ = false;
  }
  const int c = clamp(node, t);
  signed char& m = memo_[static_cast<std::size_t>(node)][static_cast<std::size_t>(c)];
  if (m < 0) m = compute(node, c) ? 1 : 0;
  return m == 1;
}

bool Evaluator::compute(int node, int t) {
  const CoreNode& n = f_.node(node);
  switch (n.op) {
    case CoreOp::Atom: {
      const int pi = atom_path_[static_cast<std::size_t>(node)];
      if (pi == -1) return false;
      if (pi == -2 || trace_len_[static_cast<std::size_t>(pi)] == 0)
        throw Error(Errc::MissingPathVar, "no trace for path variable " + n.path);
      const auto& truth = atom_truth_[static_cast<std::size_t>(node)];
      return truth[static_cast<std::size_t>(std::min<int>(t, static_cast<int>(truth.size()) - 1))] != 0;
    }
    case CoreOp::Not: return !at(n.lhs, t);
    case CoreOp::And: return at(n.lhs, t) && at(n.rhs, t);
    case CoreOp::Next: return at(n.lhs, t + 1);
    case CoreOp::Until: {
      const int sat = saturation_[static_cast<std::size_t>(node)];
      for (int d = 0;; ++d) {
        if (n.bound != kUnbounded && d > n.bound) return false;
        if (at(n.rhs, t + d)) return true;
        if (!at(n.lhs, t + d)) return false;
        // both operands are constant from here on, with lhs true and rhs false
        if (t + d >= sat) return false;
      }
    }
  }
  return false;
}

namespace {

void require_bound(const CoreFormula& f, int node, const Assignment& v) {
  std::vector<char> seen(f.nodes.size());
  std::vector<int> stack{node};
  while (!stack.empty()) {
    const int i = stack.back();
    stack.pop_back();
    if (seen[static_cast<std::size_t>(i)]) continue;
    seen[static_cast<std::size_t>(i)] = 1;
    const CoreNode& n = f.node(i);
    if (n.op == CoreOp::Atom && !n.path.empty()) {
      auto it = v.find(n.path);
      if (it == v.end() || it->second.empty())
        throw Error(Errc::MissingPathVar, "no trace for path variable " + n.path);
    }
    if (n.lhs >= 0) stack.push_back(n.lhs);
    if (n.rhs >= 0) stack.push_back(n.rhs);
  }
}

}  // namespace

bool evaluate(const CoreFormula& f, int node, const Assignment& v, int t) {
  require_bound(f, node, v);
  Evaluator ev(f);
  for (std::size_t i = 0; i < f.prefix.size(); ++i)
    if (auto it = v.find(f.prefix[i].var); it != v.end()) ev.bind(static_cast<int>(i), it->second);
  return ev.at(node, t);
}

bool evaluate(const CoreFormula& f, const Assignment& v, int t) { return evaluate(f, f.root, v, t); }

namespace {

void extend(const Dts& m, Strategy& cur, int state, int steps, std::uint64_t limit, std::vector<Strategy>& out,
            bool& overflow) {
  if (overflow) return;
  if (static_cast<int>(cur.actions.size()) == steps) {
    if (out.size() >= limit) {
      overflow = true;
      return;
    }
    out.push_back(cur);
    return;
  }
  for (int a = 0; a < m.num_actions(); ++a) {
    const int nxt = m.next(state, a);
    if (nxt < 0) continue;
    cur.actions.push_back(a);
    extend(m, cur, nxt, steps, limit, out, overflow);
    cur.actions.pop_back();
  }
}

}  // namespace

std::optional<std::vector<Strategy>> valid_strategies_from(const Dts& m, int init, int steps, std::uint64_t limit) {
  std::vector<Strategy> out;
  bool overflow = false;
  Strategy cur{init, {}};
  extend(m, cur, init, steps, limit, out, overflow);
  if (overflow) return std::nullopt;
  return out;
}

std::optional<std::vector<Strategy>> valid_strategies(const Dts& m, int steps, std::uint64_t limit) {
  std::vector<Strategy> out;
  bool overflow = false;
  for (int s = 0; s < m.num_states() && !overflow; ++s) {
    Strategy cur{s, {}};
    extend(m, cur, s, steps, limit, out, overflow);
  }
  if (overflow) return std::nullopt;
  return out;
}

std::uint64_t count_valid_strategies(const Dts& m, int steps) {
  constexpr std::uint64_t cap = std::uint64_t{1} << 62;
  std::vector<std::uint64_t> ways(static_cast<std::size_t>(m.num_states()), 1);
  for (int k = 0; k < steps; ++k) {
    std::vector<std::uint64_t> nxt(ways.size(), 0);
    for (int s = 0; s < m.num_states(); ++s) {
      std::uint64_t sum = 0;
      for (int a = 0; a < m.num_actions(); ++a)
        if (int t = m.next(s, a); t >= 0) sum = std::min(cap, sum + ways[static_cast<std::size_t>(t)]);
      nxt[static_cast<std::size_t>(s)] = sum;
    }
    ways = std::move(nxt);
  }
  std::uint64_t total = 0;
  for (auto w : ways) total = std::min(cap, total + w);
  return total;
}

}  // namespace hyperplan
