#include <cctype>
#include <cstdlib>
#include <map>
#include <sstream>

#include <json.hpp>

#include "hyperplan/encoder.hpp"
#include "hyperplan/error.hpp"

namespace hyperplan {
namespace {

std::string smt_symbol(const std::string& s) {
  for (char c : s)
    if (!std::isalnum(static_cast<unsigned char>(c)) && std::string_view("~!@$%^&*_-+=<>.?/").find(c) == std::string_view::npos)
      return "|" + s + "|";
  return s;
}

std::string state_sym(const Dts& m, int s) { return smt_symbol("st_" + m.state_name(s)); }
std::string action_sym(const Dts& m, int a) { return smt_symbol("ac_" + m.action_name(a)); }
std::string svar(const std::string& pv, int t) { return pv + "__s" + std::to_string(t); }
std::string avar(const std::string& pv, int t) { return pv + "__a" + std::to_string(t); }

void require_exists_only(const QuantifiedEncoding& e) {
  for (const auto& q : e.prefix)
    if (q.kind != Quant::Exists)
      throw Error(Errc::AlternationUnsupported, "DIMACS output needs an existential-only prefix");
}

std::string dimacs(const QuantifiedEncoding& e) {
  require_exists_only(e);
  Cnf c = e.matrix;
  c.normalize();
  std::ostringstream os;
  os << "p cnf " << c.vars << " " << c.clauses.size() << "\n";
  for (const auto& cl : c.clauses) {
    for (int l : cl) os << l << " ";
    os << "0\n";
  }
  return os.str();
}

struct Block {
  Quant kind;
  std::vector<int> paths;
};

std::string path_constraint(const std::string& pv, int steps) {
  if (steps == 0) return "true";
  std::string out = steps > 1 ? "(and" : "";
  for (int t = 0; t < steps; ++t)
    out += (steps > 1 ? " " : "") + std::string("(trans ") + svar(pv, t) + " " + avar(pv, t) + " " +
           svar(pv, t + 1) + ")";
  if (steps > 1) out += ")";
  return out;
}

std::string binders(const Problem& p, const std::vector<int>& paths) {
  std::string out;
  for (int i : paths) {
    const std::string& pv = p.formula.prefix[static_cast<std::size_t>(i)].var;
    for (int t = 0; t <= p.steps(i); ++t) out += (out.empty() ? "" : " ") + std::string("(") + svar(pv, t) + " State)";
    for (int t = 0; t < p.steps(i); ++t) out += " (" + avar(pv, t) + " Action)";
  }
  return out;
}

std::string smtlib(const Problem& p, const QuantifiedEncoding& e) {
  const Dts& m = p.dts;
  std::ostringstream os;
  os << "(set-logic ALL)\n";
  os << "(declare-datatypes ((State 0)) ((";
  for (int s = 0; s < m.num_states(); ++s) os << (s ? " " : "") << "(" << state_sym(m, s) << ")";
  os << ")))\n";
  os << "(declare-datatypes ((Action 0)) ((";
  if (m.num_actions() == 0) os << "(ac__none)";
  for (int a = 0; a < m.num_actions(); ++a) os << (a ? " " : "") << "(" << action_sym(m, a) << ")";
  os << ")))\n";

  os << "(define-fun trans ((s State) (a Action) (n State)) Bool\n  (or false";
  for (int s = 0; s < m.num_states(); ++s)
    for (int a = 0; a < m.num_actions(); ++a)
      if (int t = m.next(s, a); t >= 0)
        os << "\n      (and (= s " << state_sym(m, s) << ") (= a " << action_sym(m, a) << ") (= n " << state_sym(m, t) << "))";
  os << "))\n";
  for (const auto& prop : m.propositions()) {
    os << "(define-fun " << smt_symbol("lab_" + prop) << " ((s State)) Bool (or false";
    for (int s = 0; s < m.num_states(); ++s)
      if (m.labels(s).count(prop)) os << " (= s " << state_sym(m, s) << ")";
    os << "))\n";
  }

  // leaf terms for atlas variables; composite gates are let-bound in creation order
  std::map<int, std::string> leaf;
  leaf[1] = "true";
  for (const auto& entry : e.atlas.entries) {
    for (std::size_t t = 0; t < entry.block.x.size(); ++t)
      for (std::size_t s = 0; s < entry.block.x[t].size(); ++s)
        leaf[entry.block.x[t][s]] = "(= " + svar(entry.var, static_cast<int>(t)) + " " + state_sym(m, static_cast<int>(s)) + ")";
    for (std::size_t t = 0; t < entry.block.y.size(); ++t)
      for (std::size_t a = 0; a < entry.block.y[t].size(); ++a)
        leaf[entry.block.y[t][a]] = "(= " + avar(entry.var, static_cast<int>(t)) + " " + action_sym(m, static_cast<int>(a)) + ")";
  }
  std::map<int, std::size_t> gate_pos;
  for (std::size_t i = 0; i < e.gates.size(); ++i) gate_pos[e.gates[i].first] = i;
  std::vector<char> used(e.gates.size(), 0);
  std::vector<int> stack{e.root};
  while (!stack.empty()) {
    const int lit = stack.back();
    stack.pop_back();
    auto it = gate_pos.find(std::abs(lit));
    if (it == gate_pos.end() || used[it->second]) continue;
    used[it->second] = 1;
    for (int in : e.gates[it->second].second) stack.push_back(in);
  }
  auto term = [&](int lit) {
    const int v = std::abs(lit);
    std::string base = gate_pos.count(v) ? "g" + std::to_string(v) : leaf.at(v);
    return lit > 0 ? base : "(not " + base + ")";
  };
  std::string body;
  int lets = 0;
  for (std::size_t i = 0; i < e.gates.size(); ++i) {
    if (!used[i]) continue;
    body += "(let ((g" + std::to_string(e.gates[i].first) + " (and";
    for (int in : e.gates[i].second) body += " " + term(in);
    body += "))) ";
    if (++lets % 8 == 0) body += "\n";
  }
  body += term(e.root) + std::string(static_cast<std::size_t>(lets), ')');

  std::vector<Block> blocks;
  for (int i = 0; i < p.num_paths(); ++i) {
    if (blocks.empty() || blocks.back().kind != p.quant(i)) blocks.push_back({p.quant(i), {}});
    blocks.back().paths.push_back(i);
  }
  std::size_t first = 0;
  if (!blocks.empty() && blocks[0].kind == Quant::Exists) {
    for (int i : blocks[0].paths) {
      const std::string& pv = p.formula.prefix[static_cast<std::size_t>(i)].var;
      for (int t = 0; t <= p.steps(i); ++t) os << "(declare-const " << svar(pv, t) << " State)\n";
      for (int t = 0; t < p.steps(i); ++t) os << "(declare-const " << avar(pv, t) << " Action)\n";
    }
    for (int i : blocks[0].paths)
      os << "(assert " << path_constraint(p.formula.prefix[static_cast<std::size_t>(i)].var, p.steps(i)) << ")\n";
    first = 1;
  }
  std::string matrix = body;
  for (std::size_t b = blocks.size(); b-- > first;) {
    std::string pc = "(and";
    for (int i : blocks[b].paths) pc += " " + path_constraint(p.formula.prefix[static_cast<std::size_t>(i)].var, p.steps(i));
    pc += ")";
    if (blocks[b].kind == Quant::Exists)
      matrix = "(exists (" + binders(p, blocks[b].paths) + ")\n  (and " + pc + "\n" + matrix + "))";
    else
      matrix = "(forall (" + binders(p, blocks[b].paths) + ")\n  (=> " + pc + "\n" + matrix + "))";
  }
  os << "(assert\n" << matrix << ")\n";
  os << "(check-sat)\n(get-model)\n";
  return os.str();
}

}  // namespace

std::string to_solver_text(const Problem& p, const QuantifiedEncoding& e, Dialect d) {
  return d == Dialect::CnfDimacs ? dimacs(e) : smtlib(p, e);
}

std::string sidecar_json(const Problem& p, const QuantifiedEncoding& e, Dialect d) {
  nlohmann::ordered_json vars = nlohmann::ordered_json::object();
  for (const auto& entry : e.atlas.entries) {
    const int steps = entry.block.steps();
    for (int t = 0; t <= steps; ++t) {
      if (d == Dialect::SmtLib2) {
        vars[svar(entry.var, t)] = {{"path", entry.var}, {"time", t}, {"kind", "state"}};
      } else {
        for (int s = 0; s < p.dts.num_states(); ++s)
          vars[std::to_string(entry.block.x[static_cast<std::size_t>(t)][static_cast<std::size_t>(s)])] = {
              {"path", entry.var}, {"time", t}, {"kind", "state"}, {"value", p.dts.state_name(s)}};
      }
      if (t == steps) break;
      if (d == Dialect::SmtLib2) {
        vars[avar(entry.var, t)] = {{"path", entry.var}, {"time", t}, {"kind", "action"}};
      } else {
        for (int a = 0; a < p.dts.num_actions(); ++a)
          vars[std::to_string(entry.block.y[static_cast<std::size_t>(t)][static_cast<std::size_t>(a)])] = {
              {"path", entry.var}, {"time", t}, {"kind", "action"}, {"value", p.dts.action_name(a)}};
      }
    }
  }
  nlohmann::ordered_json out;
  out["dialect"] = d == Dialect::CnfDimacs ? "cnf-dimacs" : "smtlib2";
  out["variables"] = vars;
  return out.dump(2) + "\n";
}

}  // namespace hyperplan
