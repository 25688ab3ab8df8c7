#include "hyperplan/encoder.hpp"

#include <algorithm>
#include <cstdlib>

#include "hyperplan/error.hpp"

namespace hyperplan {

GateBuilder::GateBuilder(ClauseSink& sink) : sink_(sink) {
  true_ = sink_.new_var();
  sink_.add({true_});
}

int GateBuilder::land(std::vector<int> xs) {
  std::vector<int> in;
  in.reserve(xs.size());
  for (int x : xs) {
    if (x == true_) continue;
    if (x == -true_) return -true_;
    in.push_back(x);
  }
  std::sort(in.begin(), in.end(), [](int a, int b) {
    return std::abs(a) != std::abs(b) ? std::abs(a) < std::abs(b) : a > b;
  });
  in.erase(std::unique(in.begin(), in.end()), in.end());
  for (std::size_t i = 1; i < in.size(); ++i)
    if (in[i] == -in[i - 1]) return -true_;
  if (in.empty()) return true_;
  if (in.size() == 1) return in[0];
  if (auto it = cache_.find(in); it != cache_.end()) return it->second;
  const int g = sink_.new_var();
  std::vector<int> big{g};
  for (int x : in) {
    sink_.add({-g, x});
    big.push_back(-x);
  }
  sink_.add_clause(big);
  cache_.emplace(in, g);
  gates_.emplace_back(g, in);
  return g;
}

int GateBuilder::lor(std::vector<int> xs) {
  for (int& x : xs) x = -x;
  return -land(std::move(xs));
}

// ---------------------------------------------------------------------------
// path constraints

void exactly_one(ClauseSink& sink, const std::vector<int>& group) {
  sink.add_clause(group);
  const std::size_t n = group.size();
  if (n <= 6) {
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i + 1; j < n; ++j) sink.add({-group[i], -group[j]});
    return;
  }
  // sequential counter
  std::vector<int> s(n - 1);
  for (auto& v : s) v = sink.new_var();
  sink.add({-group[0], s[0]});
  for (std::size_t i = 1; i + 1 < n; ++i) {
    sink.add({-group[i], s[i]});
    sink.add({-s[i - 1], s[i]});
    sink.add({-group[i], -s[i - 1]});
  }
  sink.add({-group[n - 1], -s[n - 2]});
}

PathBlock encode_path_constraint(ClauseSink& sink, const Dts& m, int steps) {
  PathBlock b;
  auto fresh = [&](int n) {
    std::vector<int> v(static_cast<std::size_t>(n));
    for (auto& x : v) x = sink.new_var();
    return v;
  };
  b.x.push_back(fresh(m.num_states()));
  for (int t = 0; t < steps; ++t) {
    b.y.push_back(fresh(m.num_actions()));
    b.x.push_back(fresh(m.num_states()));
  }
  for (const auto& g : b.x) exactly_one(sink, g);
  for (const auto& g : b.y) exactly_one(sink, g);
  for (int t = 0; t < steps; ++t) {
    const auto& x0 = b.x[static_cast<std::size_t>(t)];
    const auto& x1 = b.x[static_cast<std::size_t>(t + 1)];
    const auto& y = b.y[static_cast<std::size_t>(t)];
    for (int s = 0; s < m.num_states(); ++s)
      for (int a = 0; a < m.num_actions(); ++a) {
        const int nxt = m.next(s, a);
        const int xs = x0[static_cast<std::size_t>(s)], ya = y[static_cast<std::size_t>(a)];
        if (nxt >= 0) sink.add({-xs, -ya, x1[static_cast<std::size_t>(nxt)]});
        else sink.add({-xs, -ya});
      }
  }
  return b;
}

ConstPath::ConstPath(const Dts& m, const Strategy& sigma, const GateBuilder& g) : sigma_(sigma), top_(g.top()) {
  auto states = run(m, sigma);
  if (!states) throw Error(Errc::WitnessPathUndefined, "strategy leaves the transition function");
  states_ = std::move(*states);
}

LinkedPath::LinkedPath(const Dts& m, GateBuilder& g, Choice init, std::vector<Choice> actions)
    : m_(m), g_(g), init_(init), actions_(std::move(actions)) {
  cache_.assign(actions_.size() + 1, std::vector<int>(static_cast<std::size_t>(m.num_states()), 0));
  preds_.resize(static_cast<std::size_t>(m.num_states()));
  for (int s = 0; s < m.num_states(); ++s)
    for (int a = 0; a < m.num_actions(); ++a)
      if (int t = m.next(s, a); t >= 0) preds_[static_cast<std::size_t>(t)].emplace_back(s, a);
}

int LinkedPath::action(int t, int a) {
  const Choice& c = actions_[static_cast<std::size_t>(t)];
  if (c.link) return c.link->action(t, a);
  return c.value == a ? g_.top() : g_.bottom();
}

int LinkedPath::state(int t, int s) {
  int& slot = cache_[static_cast<std::size_t>(t)][static_cast<std::size_t>(s)];
  if (slot != 0) return slot;
  // a prefix copied entirely from one path coincides with that path's states
  bool shared = init_.link != nullptr;
  for (int k = 0; shared && k < t; ++k) shared = actions_[static_cast<std::size_t>(k)].link == init_.link;
  if (shared) return slot = init_.link->state(t, s);
  if (t == 0) return slot = (init_.value == s ? g_.top() : g_.bottom());
  std::vector<int> terms;
  for (const auto& [p, a] : preds_[static_cast<std::size_t>(s)]) {
    const int act = action(t - 1, a);
    if (act == g_.bottom()) continue;
    const int prev = state(t - 1, p);
    if (prev == g_.bottom()) continue;
    terms.push_back(g_.land(prev, act));
  }
  return slot = g_.lor(std::move(terms));
}

int LinkedPath::valid() {
  std::vector<int> terms;
  for (int s = 0; s < m_.num_states(); ++s) terms.push_back(state(steps(), s));
  return g_.lor(std::move(terms));
}

// ---------------------------------------------------------------------------
// unrolling

Unroller::Unroller(const CoreFormula& f, const Dts& m, GateBuilder& g, std::vector<PathLits*> paths)
    : f_(f), m_(m), g_(g), paths_(std::move(paths)) {
  const std::size_t n = f.nodes.size();
  saturation_.assign(n, 0);
  memo_.resize(n);
  const auto props = m.propositions();
  for (std::size_t i = 0; i < n; ++i) {
    const CoreNode& node = f.nodes[i];
    auto sat = [&](int c) { return saturation_[static_cast<std::size_t>(c)]; };
    int s = 0;
    switch (node.op) {
      case CoreOp::Atom:
        if (!node.path.empty()) {
          const int pi = f.path_index(node.path);
          if (pi < 0) throw Error(Errc::MissingPathVar, "no path for variable " + node.path);
          if (node.prop != kEpsilon && !m.state_index(node.prop) && !m.action_index(node.prop) &&
              !props.count(node.prop))
            throw Error(Errc::UnknownAtom, node.prop + "@" + node.path);
          s = paths_[static_cast<std::size_t>(pi)]->steps();
        }
        break;
      case CoreOp::Not: s = sat(node.lhs); break;
      case CoreOp::And:
      case CoreOp::Until: s = std::max(sat(node.lhs), sat(node.rhs)); break;
      case CoreOp::Next: s = std::max(0, sat(node.lhs) - 1); break;
    }
    saturation_[i] = s;
    memo_[i].assign(static_cast<std::size_t>(s + 1), 0);
  }
}

int Unroller::atom(int node, int t) {
  const CoreNode& n = f_.node(node);
  if (n.path.empty()) return g_.bottom();
  PathLits& p = *paths_[static_cast<std::size_t>(f_.path_index(n.path))];
  const int eff = std::min(t, p.steps());
  std::vector<int> terms;
  if (n.prop == kEpsilon) terms.push_back(eff == 0 ? g_.top() : g_.bottom());
  if (auto s = m_.state_index(n.prop)) terms.push_back(p.state(eff, *s));
  if (auto a = m_.action_index(n.prop); a && eff >= 1) terms.push_back(p.action(eff - 1, *a));
  for (int s = 0; s < m_.num_states(); ++s)
    if (m_.labels(s).count(n.prop)) terms.push_back(p.state(eff, s));
  return g_.lor(std::move(terms));
}

int Unroller::at(int node, int t) {
  const int c = std::min(t, saturation_[static_cast<std::size_t>(node)]);
  int& slot = memo_[static_cast<std::size_t>(node)][static_cast<std::size_t>(c)];
  if (slot != 0) return slot;
  const CoreNode& n = f_.node(node);
  int r = 0;
  switch (n.op) {
    case CoreOp::Atom: r = atom(node, c); break;
    case CoreOp::Not: r = -at(n.lhs, c); break;
    case CoreOp::And: {
      const int a = at(n.lhs, c);
      r = a == g_.bottom() ? a : g_.land(a, at(n.rhs, c));
      break;
    }
    case CoreOp::Next: r = at(n.lhs, c + 1); break;
    case CoreOp::Until: r = until(node, c, n.bound == kUnbounded ? saturation_[static_cast<std::size_t>(node)] : n.bound); break;
  }
  return slot = r;
}

int Unroller::until(int node, int t, int k) {
  const CoreNode& n = f_.node(node);
  const int sat = saturation_[static_cast<std::size_t>(node)];
  // from the saturation time on both operands are constant, so U reduces to its right operand
  if (t >= sat) return at(n.rhs, sat);
  k = std::min(k, sat - t);
  if (k == 0) return at(n.rhs, t);
  const auto key = std::make_tuple(node, t, k);
  if (auto it = until_memo_.find(key); it != until_memo_.end()) return it->second;
  const int rhs = at(n.rhs, t);
  int r = rhs;
  if (rhs != g_.top()) {
    const int lhs = at(n.lhs, t);
    r = lhs == g_.bottom() ? rhs : g_.lor(rhs, g_.land(lhs, until(node, t + 1, k - 1)));
  }
  until_memo_.emplace(key, r);
  return r;
}

// ---------------------------------------------------------------------------

QuantifiedEncoding encode_problem(const Problem& p) {
  QuantifiedEncoding e;
  e.prefix = p.formula.prefix;
  GateBuilder g(e.matrix);
  std::vector<std::unique_ptr<SymbolicPath>> owned;
  std::vector<PathLits*> paths;
  for (int i = 0; i < p.num_paths(); ++i) {
    PathBlock b = encode_path_constraint(e.matrix, p.dts, p.steps(i));
    e.atlas.entries.push_back({e.prefix[static_cast<std::size_t>(i)].var, p.quant(i), b});
    owned.push_back(std::make_unique<SymbolicPath>(std::move(b)));
    paths.push_back(owned.back().get());
  }
  Unroller u(p.formula, p.dts, g, paths);
  e.root = u.root();
  e.matrix.add({e.root});
  e.gates = g.gates();
  return e;
}

Strategy decode(const PathBlock& block, const std::vector<bool>& model) {
  auto pick = [&](const std::vector<int>& group) {
    for (std::size_t i = 0; i < group.size(); ++i)
      if (model[static_cast<std::size_t>(group[i])]) return static_cast<int>(i);
    return -1;
  };
  Strategy s;
  s.init = pick(block.x[0]);
  for (const auto& y : block.y) s.actions.push_back(pick(y));
  return s;
}

}  // namespace hyperplan
