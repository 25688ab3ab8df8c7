#include "hyperplan/horizon.hpp"

#include <vector>

#include "hyperplan/error.hpp"

namespace hyperplan {

std::ostream& operator<<(std::ostream& os, HorizonValue h) {
  if (h.is_finite()) return os << h.value();
  return os << "-inf";
}

HorizonValue horizon(const CoreFormula& f, int node, std::string_view pv) {
  // children precede parents, so one forward pass over the arena suffices
  std::vector<HorizonValue> h(static_cast<std::size_t>(node + 1), HorizonValue::neg_infinity());
  for (int i = 0; i <= node; ++i) {
    const CoreNode& n = f.node(i);
    auto child = [&](int c) { return h[static_cast<std::size_t>(c)]; };
    HorizonValue v = HorizonValue::neg_infinity();
    switch (n.op) {
      case CoreOp::Atom: v = n.path == pv && !n.path.empty() ? HorizonValue::finite(0) : v; break;
      case CoreOp::Not: v = child(n.lhs); break;
      case CoreOp::And: v = max(child(n.lhs), child(n.rhs)); break;
      case CoreOp::Next: v = child(n.lhs) + 1; break;
      case CoreOp::Until:
        if (n.bound == kUnbounded) {
          // only a problem if this node is actually reachable from `node`; checked below
          v = max(child(n.lhs), child(n.rhs));
        } else {
          v = max(child(n.lhs), child(n.rhs)) + n.bound;
        }
        break;
    }
    h[static_cast<std::size_t>(i)] = v;
  }
  // reject unbounded untils reachable from `node`
  std::vector<bool> seen(static_cast<std::size_t>(node + 1));
  std::vector<int> stack{node};
  while (!stack.empty()) {
    const int i = stack.back();
    stack.pop_back();
    if (seen[static_cast<std::size_t>(i)]) continue;
    seen[static_cast<std::size_t>(i)] = true;
    const CoreNode& n = f.node(i);
    if (n.op == CoreOp::Until && n.bound == kUnbounded)
      throw Error(Errc::UnboundedOperator, "until without a finite bound: " + to_string(f, i));
    if (n.lhs >= 0) stack.push_back(n.lhs);
    if (n.rhs >= 0) stack.push_back(n.rhs);
  }
  return h[static_cast<std::size_t>(node)];
}

HorizonValue horizon(const CoreFormula& f, std::string_view pv) { return horizon(f, f.root, pv); }

HorizonMap horizons(const CoreFormula& f) {
  HorizonMap out;
  for (const auto& q : f.prefix) out.emplace(q.var, horizon(f, q.var));
  return out;
}

}  // namespace hyperplan
