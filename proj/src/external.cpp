#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <regex>
#include <sstream>

#include "hyperplan/encoder.hpp"
#include "hyperplan/error.hpp"
#include "hyperplan/io.hpp"
#include "hyperplan/solver.hpp"

namespace hyperplan {
namespace {

std::string shell_quote(const std::string& s) {
  std::string out = "'";
  for (char c : s) out += c == '\'' ? std::string("'\\''") : std::string(1, c);
  return out + "'";
}

std::string run_command(const std::string& cmd) {
  FILE* pipe = popen(cmd.c_str(), "r");
  if (!pipe) throw Error(Errc::Io, "cannot run " + cmd);
  std::string out;
  char buf[4096];
  while (std::size_t n = std::fread(buf, 1, sizeof buf, pipe)) out.append(buf, n);
  pclose(pipe);
  return out;
}

std::string unquote(std::string s) {
  if (s.size() >= 2 && s.front() == '|' && s.back() == '|') s = s.substr(1, s.size() - 2);
  return s;
}

}  // namespace

Outcome solve_external(const Problem& p) {
  const QuantifiedEncoding e = encode_problem(p);
  const Dialect d = p.options.dialect;
  const std::string text = to_solver_text(p, e, d);
  std::string path = p.options.export_path;
  if (path.empty())
    path = (std::filesystem::temp_directory_path() / (d == Dialect::CnfDimacs ? "hyperplan.cnf" : "hyperplan.smt2")).string();
  write_file(path, text);
  write_file(path + ".map.json", sidecar_json(p, e, d));

  Outcome out;
  std::string cmd = p.options.solver_cmd;
  if (cmd.empty())
    if (const char* env = std::getenv("HYPERPLAN_SOLVER_CMD")) cmd = env;
  if (cmd.empty()) {
    out.reason = "exported to " + path;
    return out;
  }
  const std::string reply = run_command(cmd + " " + shell_quote(path));
  std::istringstream in(reply);
  std::string verdict;
  for (std::string line; std::getline(in, line);) {
    line.erase(0, line.find_first_not_of(" \t\r"));
    line.erase(line.find_last_not_of(" \t\r") + 1);
    if (line.empty() || line[0] == 'c') continue;
    if (line.rfind("s ", 0) == 0) line = line.substr(2);
    verdict = line;
    break;
  }
  if (verdict == "unsat" || verdict == "UNSATISFIABLE") {
    out.status = Outcome::Status::Unrealizable;
    return out;
  }
  if (verdict != "sat" && verdict != "SATISFIABLE") {
    out.reason = "external solver answered '" + verdict + "'";
    return out;
  }

  const int lead = leading_exists(p.formula);
  if (d == Dialect::CnfDimacs) {
    std::vector<bool> model(static_cast<std::size_t>(e.matrix.vars) + 1, false);
    std::istringstream vs(reply);
    for (std::string line; std::getline(vs, line);) {
      std::istringstream ls(line);
      std::string first;
      ls >> first;
      if (first != "v") continue;
      for (long lit; ls >> lit;)
        if (lit > 0 && lit <= e.matrix.vars) model[static_cast<std::size_t>(lit)] = true;
    }
    for (int i = 0; i < lead; ++i) {
      const auto& entry = e.atlas.entries[static_cast<std::size_t>(i)];
      out.witness[entry.var] = decode(entry.block, model);
    }
  } else {
    static const std::regex def(R"(\(define-fun\s+(\S+)\s+\(\)\s+\S+\s+(\|[^|]*\||[^\s()]+)\s*\))");
    std::map<std::string, std::string> values;
    for (auto it = std::sregex_iterator(reply.begin(), reply.end(), def); it != std::sregex_iterator(); ++it)
      values[unquote((*it)[1])] = unquote((*it)[2]);
    for (int i = 0; i < lead; ++i) {
      const std::string& pv = p.formula.prefix[static_cast<std::size_t>(i)].var;
      Strategy s;
      auto state = [&](int t) {
        auto v = values.find(pv + "__s" + std::to_string(t));
        if (v == values.end() || v->second.rfind("st_", 0) != 0) throw Error(Errc::BadSpec, "model lacks " + pv + " state");
        auto idx = p.dts.state_index(v->second.substr(3));
        if (!idx) throw Error(Errc::BadSpec, "model names unknown state " + v->second);
        return *idx;
      };
      s.init = state(0);
      for (int t = 0; t < p.steps(i); ++t) {
        auto v = values.find(pv + "__a" + std::to_string(t));
        if (v == values.end() || v->second.rfind("ac_", 0) != 0) throw Error(Errc::BadSpec, "model lacks " + pv + " action");
        auto idx = p.dts.action_index(v->second.substr(3));
        if (!idx) throw Error(Errc::BadSpec, "model names unknown action " + v->second);
        s.actions.push_back(*idx);
      }
      out.witness[pv] = s;
    }
  }
  out.status = Outcome::Status::Realizable;
  return out;
}

}  // namespace hyperplan
