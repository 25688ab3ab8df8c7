#include <map>
#include <tuple>

#include "hyperplan/error.hpp"
#include "hyperplan/formula.hpp"

namespace hyperplan {
namespace {

class CoreBuilder {
 public:
  explicit CoreBuilder(CoreFormula& out) : out_(out) {}

  int add(CoreNode n) {
    auto key = std::make_tuple(n.op, n.lhs, n.rhs, n.bound, n.prop, n.path);
    if (auto it = memo_.find(key); it != memo_.end()) return it->second;
    const int id = static_cast<int>(out_.nodes.size());
    out_.nodes.push_back(std::move(n));
    memo_.emplace(std::move(key), id);
    return id;
  }

  int atom(const std::string& prop, const std::string& path) {
    return add({CoreOp::Atom, -1, -1, kUnbounded, prop, path});
  }
  int bot() { return atom(std::string(kReservedAtom), ""); }

  int negate(int a) {
    const CoreNode& n = out_.node(a);
    if (n.op == CoreOp::Not) return n.lhs;
    return add({CoreOp::Not, a, -1, kUnbounded, {}, {}});
  }
  int both(int a, int b) { return add({CoreOp::And, a, b, kUnbounded, {}, {}}); }
  int either(int a, int b) { return negate(both(negate(a), negate(b))); }
  int iff(int a, int b) { return both(negate(both(a, negate(b))), negate(both(b, negate(a)))); }
  int step(int a) { return add({CoreOp::Next, a, -1, kUnbounded, {}, {}}); }
  int until(int a, int b, int bound) { return add({CoreOp::Until, a, b, bound, {}, {}}); }
  int truth() { return negate(falsity()); }
  int falsity() {
    const int p = bot();
    return both(p, negate(p));
  }

 private:
  CoreFormula& out_;
  std::map<std::tuple<CoreOp, int, int, int, std::string, std::string>, int> memo_;
};

class Desugarer {
 public:
  Desugarer(CoreFormula& out, const DesugarOptions& opts) : b_(out), opts_(opts) {}

  int run(const Expr& e) {
    switch (e.kind) {
      case ExprKind::Atom: return b_.atom(e.prop, e.path);
      case ExprKind::True: return b_.truth();
      case ExprKind::False: return b_.falsity();
      case ExprKind::Not: return b_.negate(run(*e.lhs));
      case ExprKind::And: return b_.both(run(*e.lhs), run(*e.rhs));
      case ExprKind::Or: return b_.either(run(*e.lhs), run(*e.rhs));
      case ExprKind::Implies: return b_.either(b_.negate(run(*e.lhs)), run(*e.rhs));
      case ExprKind::Next: return b_.step(run(*e.lhs));
      case ExprKind::Until: return b_.until(run(*e.lhs), run(*e.rhs), e.bound);
      case ExprKind::Finally: return b_.until(b_.truth(), run(*e.lhs), e.bound);
      case ExprKind::Globally: return b_.negate(b_.until(b_.truth(), b_.negate(run(*e.lhs)), e.bound));
      case ExprKind::ActEq: return equality(opts_.actions, "act", e);
      case ExprKind::ObsEq: return equality(opts_.observations, "obs", e);
    }
    throw Error(Errc::BadSpec, "unknown expression kind");
  }

 private:
  int equality(const std::vector<std::string>& alphabet, const char* what, const Expr& e) {
    if (alphabet.empty())
      throw Error(Errc::EmptyAlphabet, std::string(what) + "(" + e.path + ")=" + what + "(" + e.path2 + ")");
    int acc = -1;
    for (const auto& a : alphabet) {
      const int l = b_.atom(a, e.path);
      const int r = b_.atom(a, e.path2);
      const int term = opts_.literal_equality ? b_.both(l, r) : b_.iff(l, r);
      acc = acc < 0 ? term : b_.both(acc, term);
    }
    return acc;
  }

  CoreBuilder b_;
  const DesugarOptions& opts_;
};

}  // namespace

CoreFormula desugar(const Formula& f, const DesugarOptions& opts) {
  validate(f);
  CoreFormula out;
  out.prefix = f.prefix;
  out.root = Desugarer(out, opts).run(*f.body);
  return out;
}

}  // namespace hyperplan
