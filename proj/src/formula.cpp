#include "hyperplan/formula.hpp"

#include <set>
#include <sstream>

#include "hyperplan/error.hpp"

namespace hyperplan {

const char* errc_name(Errc code) {
  switch (code) {
    case Errc::Syntax: return "SyntaxError";
    case Errc::UnboundPathVar: return "UnboundPathVar";
    case Errc::QuantifierNotInPrefix: return "QuantifierNotInPrefix";
    case Errc::DuplicateQuantifier: return "DuplicateQuantifier";
    case Errc::EmptyAlphabet: return "EmptyAlphabet";
    case Errc::InvalidModel: return "InvalidModel";
    case Errc::UndefinedTransition: return "UndefinedTransition";
    case Errc::EmptyGrid: return "EmptyGrid";
    case Errc::NoFreeCell: return "NoFreeCell";
    case Errc::UnboundedOperator: return "UnboundedOperator";
    case Errc::MissingPathVar: return "MissingPathVar";
    case Errc::WitnessPathUndefined: return "WitnessPathUndefined";
    case Errc::PrefixUnsupported: return "PrefixUnsupported";
    case Errc::UnknownAtom: return "UnknownAtom";
    case Errc::AlternationUnsupported: return "AlternationUnsupported";
    case Errc::UnknownLabel: return "UnknownLabel";
    case Errc::EmptyInitialSet: return "EmptyInitialSet";
    case Errc::TraceOffGrid: return "TraceOffGrid";
    case Errc::BadSpec: return "BadSpec";
    case Errc::Io: return "IoError";
  }
  return "Error";
}

namespace {

std::string describe_syntax(std::size_t pos, const std::vector<std::string>& expected,
                            const std::string& found) {
  std::ostringstream os;
  os << "at offset " << pos << ": expected ";
  for (std::size_t i = 0; i < expected.size(); ++i) {
    if (i) os << (i + 1 == expected.size() ? " or " : ", ");
    os << expected[i];
  }
  os << ", found " << (found.empty() ? "end of input" : "'" + found + "'");
  return os.str();
}

ExprPtr make(ExprKind kind, ExprPtr lhs = nullptr, ExprPtr rhs = nullptr, int bound = kUnbounded) {
  auto e = std::make_shared<Expr>();
  e->kind = kind;
  e->lhs = std::move(lhs);
  e->rhs = std::move(rhs);
  e->bound = bound;
  return e;
}

void bound_suffix(std::ostream& os, int bound) {
  if (bound != kUnbounded) os << "[<=" << bound << "]";
}

void print(std::ostream& os, const Expr& e) {
  switch (e.kind) {
    case ExprKind::Atom: os << e.prop << "@" << e.path; return;
    case ExprKind::True: os << "true"; return;
    case ExprKind::False: os << "false"; return;
    case ExprKind::Not: os << "!"; print(os, *e.lhs); return;
    case ExprKind::Next: os << "X "; print(os, *e.lhs); return;
    case ExprKind::Finally:
      os << "F";
      bound_suffix(os, e.bound);
      os << " ";
      print(os, *e.lhs);
      return;
    case ExprKind::Globally:
      os << "G";
      bound_suffix(os, e.bound);
      os << " ";
      print(os, *e.lhs);
      return;
    case ExprKind::ActEq: os << "act(" << e.path << ")=act(" << e.path2 << ")"; return;
    case ExprKind::ObsEq: os << "obs(" << e.path << ")=obs(" << e.path2 << ")"; return;
    case ExprKind::And:
    case ExprKind::Or:
    case ExprKind::Implies:
    case ExprKind::Until: {
      os << "(";
      print(os, *e.lhs);
      if (e.kind == ExprKind::And) os << " & ";
      if (e.kind == ExprKind::Or) os << " | ";
      if (e.kind == ExprKind::Implies) os << " -> ";
      if (e.kind == ExprKind::Until) {
        os << " U";
        bound_suffix(os, e.bound);
        os << " ";
      }
      print(os, *e.rhs);
      os << ")";
      return;
    }
  }
}

void collect_paths(const Expr& e, std::vector<std::string>& out) {
  switch (e.kind) {
    case ExprKind::Atom: out.push_back(e.path); break;
    case ExprKind::ActEq:
    case ExprKind::ObsEq:
      out.push_back(e.path);
      out.push_back(e.path2);
      break;
    default: break;
  }
  if (e.lhs) collect_paths(*e.lhs, out);
  if (e.rhs) collect_paths(*e.rhs, out);
}

void print_core(std::ostream& os, const CoreFormula& f, int i) {
  const CoreNode& n = f.node(i);
  switch (n.op) {
    case CoreOp::Atom:
      if (n.path.empty()) os << "false";
      else os << n.prop << "@" << n.path;
      return;
    case CoreOp::Not: os << "!"; print_core(os, f, n.lhs); return;
    case CoreOp::Next: os << "X "; print_core(os, f, n.lhs); return;
    case CoreOp::And:
      os << "(";
      print_core(os, f, n.lhs);
      os << " & ";
      print_core(os, f, n.rhs);
      os << ")";
      return;
    case CoreOp::Until:
      os << "(";
      print_core(os, f, n.lhs);
      os << " U";
      bound_suffix(os, n.bound);
      os << " ";
      print_core(os, f, n.rhs);
      os << ")";
      return;
  }
}

void print_prefix(std::ostream& os, const std::vector<Quantifier>& prefix) {
  for (const auto& q : prefix) os << (q.kind == Quant::Exists ? "exists " : "forall ") << q.var << ". ";
}

}  // namespace

SyntaxError::SyntaxError(std::size_t pos, std::vector<std::string> expected, const std::string& found)
    : Error(Errc::Syntax, describe_syntax(pos, expected, found)), pos_(pos), expected_(std::move(expected)) {}

ExprPtr atom(std::string prop, std::string path) {
  auto e = std::make_shared<Expr>();
  e->kind = ExprKind::Atom;
  e->prop = std::move(prop);
  e->path = std::move(path);
  return e;
}

ExprPtr top() { return make(ExprKind::True); }
ExprPtr bottom() { return make(ExprKind::False); }
ExprPtr neg(ExprPtr e) { return make(ExprKind::Not, std::move(e)); }
ExprPtr conj(ExprPtr a, ExprPtr b) { return make(ExprKind::And, std::move(a), std::move(b)); }
ExprPtr disj(ExprPtr a, ExprPtr b) { return make(ExprKind::Or, std::move(a), std::move(b)); }
ExprPtr implies(ExprPtr a, ExprPtr b) { return make(ExprKind::Implies, std::move(a), std::move(b)); }
ExprPtr next(ExprPtr e) { return make(ExprKind::Next, std::move(e)); }
ExprPtr until(ExprPtr a, ExprPtr b, int bound) { return make(ExprKind::Until, std::move(a), std::move(b), bound); }
ExprPtr eventually(ExprPtr e, int bound) { return make(ExprKind::Finally, std::move(e), nullptr, bound); }
ExprPtr always(ExprPtr e, int bound) { return make(ExprKind::Globally, std::move(e), nullptr, bound); }

ExprPtr conj(std::vector<ExprPtr> parts) {
  if (parts.empty()) return top();
  ExprPtr acc = parts.front();
  for (std::size_t i = 1; i < parts.size(); ++i) acc = conj(acc, parts[i]);
  return acc;
}

ExprPtr act_eq(std::string p1, std::string p2) {
  auto e = std::make_shared<Expr>();
  e->kind = ExprKind::ActEq;
  e->path = std::move(p1);
  e->path2 = std::move(p2);
  return e;
}

ExprPtr obs_eq(std::string p1, std::string p2) {
  auto e = std::make_shared<Expr>();
  e->kind = ExprKind::ObsEq;
  e->path = std::move(p1);
  e->path2 = std::move(p2);
  return e;
}

bool structurally_equal(const Expr& a, const Expr& b) {
  if (a.kind != b.kind || a.prop != b.prop || a.path != b.path || a.path2 != b.path2 || a.bound != b.bound)
    return false;
  if (bool(a.lhs) != bool(b.lhs) || bool(a.rhs) != bool(b.rhs)) return false;
  if (a.lhs && !structurally_equal(*a.lhs, *b.lhs)) return false;
  if (a.rhs && !structurally_equal(*a.rhs, *b.rhs)) return false;
  return true;
}

bool structurally_equal(const Formula& a, const Formula& b) {
  return a.prefix == b.prefix && structurally_equal(*a.body, *b.body);
}

std::string to_string(const Expr& e) {
  std::ostringstream os;
  print(os, e);
  return os.str();
}

std::string to_string(const Formula& f) {
  std::ostringstream os;
  print_prefix(os, f.prefix);
  print(os, *f.body);
  return os.str();
}

void validate(const Formula& f) {
  std::set<std::string> bound;
  for (const auto& q : f.prefix) {
    if (!bound.insert(q.var).second) throw Error(Errc::DuplicateQuantifier, q.var);
  }
  if (!f.body) throw Error(Errc::BadSpec, "formula without body");
  std::vector<std::string> used;
  collect_paths(*f.body, used);
  for (const auto& p : used) {
    if (!bound.count(p)) throw Error(Errc::UnboundPathVar, p);
  }
}

int CoreFormula::path_index(std::string_view var) const {
  for (std::size_t i = 0; i < prefix.size(); ++i)
    if (prefix[i].var == var) return static_cast<int>(i);
  return -1;
}

std::string to_string(const CoreFormula& f, int node) {
  std::ostringstream os;
  print_core(os, f, node);
  return os.str();
}

std::string to_string(const CoreFormula& f) {
  std::ostringstream os;
  print_prefix(os, f.prefix);
  print_core(os, f, f.root);
  return os.str();
}

bool is_core(const CoreFormula& f) {
  for (std::size_t i = 0; i < f.nodes.size(); ++i) {
    const CoreNode& n = f.nodes[i];
    const int self = static_cast<int>(i);
    switch (n.op) {
      case CoreOp::Atom:
        if (n.lhs != -1 || n.rhs != -1) return false;
        break;
      case CoreOp::Not:
      case CoreOp::Next:
        if (n.lhs < 0 || n.lhs >= self || n.rhs != -1) return false;
        break;
      case CoreOp::And:
      case CoreOp::Until:
        if (n.lhs < 0 || n.rhs < 0 || n.lhs >= self || n.rhs >= self) return false;
        break;
      default: return false;
    }
  }
  return f.root >= 0 && f.root < static_cast<int>(f.nodes.size());
}

}  // namespace hyperplan
