#include "hyperplan/io.hpp"

#include <fstream>
#include <sstream>

#include <json.hpp>

#include "hyperplan/error.hpp"

namespace hyperplan {
namespace {

using nlohmann::json;

json parse_json(std::string_view text) {
  try {
    return json::parse(text);
  } catch (const json::exception& e) {
    throw Error(Errc::BadSpec, std::string("invalid JSON: ") + e.what());
  }
}

std::vector<std::string> string_list(const json& j, const char* key) {
  if (!j.is_array()) throw Error(Errc::BadSpec, std::string(key) + " must be a list of strings");
  std::vector<std::string> out;
  for (const auto& x : j) {
    if (!x.is_string()) throw Error(Errc::BadSpec, std::string(key) + " must be a list of strings");
    out.push_back(x.get<std::string>());
  }
  return out;
}

std::string string_field(const json& j, const char* key) {
  if (!j.is_string()) throw Error(Errc::BadSpec, std::string(key) + " must be a string");
  return j.get<std::string>();
}

}  // namespace

SpecFile parse_spec(std::string_view text) {
  const json j = parse_json(text);
  if (!j.is_object()) throw Error(Errc::BadSpec, "spec must be a JSON object");
  SpecFile s;
  if (j.contains("objective") == j.contains("formula"))
    throw Error(Errc::BadSpec, "spec needs exactly one of \"objective\" and \"formula\"");
  if (j.contains("formula")) {
    for (const auto& [k, v] : j.items()) {
      if (k == "formula") s.formula = string_field(v, "formula");
      else if (k == "actions") s.actions = string_list(v, "actions");
      else if (k == "observations") s.observations = string_list(v, "observations");
      else if (k == "literal_equality" && v.is_boolean()) s.literal_equality = v.get<bool>();
      else throw Error(Errc::BadSpec, "unexpected field \"" + k + "\"");
    }
    return s;
  }
  ObjectiveSpec o;
  for (const auto& [k, v] : j.items()) {
    if (k == "objective") {
      auto kind = parse_objective(string_field(v, "objective"));
      if (!kind) throw Error(Errc::BadSpec, "unknown objective " + v.dump());
      o.kind = *kind;
    } else if (k == "T") {
      if (!v.is_number_integer() || v.get<int>() < 0) throw Error(Errc::BadSpec, "T must be a nonnegative integer");
      o.T = v.get<int>();
    } else if (k == "init") {
      o.init = string_field(v, "init");
    } else if (k == "goal_label") {
      o.goal_label = string_field(v, "goal_label");
      o.goal_given = true;
    } else if (k == "variant") {
      const std::string name = string_field(v, "variant");
      if (name == "literal") o.variant = Variant::Literal;
      else if (name == "guarded" || name == "strict") o.variant = Variant::Guarded;
      else throw Error(Errc::BadSpec, "unknown variant " + name);
    } else if (k == "init_set_label") {
      o.init_set_label = string_field(v, "init_set_label");
    } else if (k == "init_set") {
      o.init_set = string_list(v, "init_set");
    } else if (k == "observations") {
      o.observations = string_list(v, "observations");
    } else {
      throw Error(Errc::BadSpec, "unexpected field \"" + k + "\"");
    }
  }
  if (!j.contains("T")) throw Error(Errc::BadSpec, "objective spec needs \"T\"");
  s.objective = o;
  return s;
}

CoreFormula spec_formula(const SpecFile& spec, const Dts& m) {
  if (spec.objective) return desugar(instantiate(*spec.objective, m), desugar_options(*spec.objective, m));
  DesugarOptions d;
  d.actions = spec.actions ? *spec.actions : m.actions();
  if (spec.observations) {
    d.observations = *spec.observations;
  } else {
    for (const auto& p : m.propositions())
      if (p.rfind("row_", 0) == 0) d.observations.push_back(p);
  }
  d.literal_equality = spec.literal_equality;
  return desugar(parse(spec.formula), d);
}

Problem load_problem(const Dts& m, const SpecFile& spec, SolveOptions options) {
  return make_problem(m, spec_formula(spec, m), std::move(options));
}

std::string witness_json(const Dts& m, const Witness& w, std::optional<Verification> verified) {
  nlohmann::ordered_json paths = nlohmann::ordered_json::object();
  for (const auto& [var, s] : w) {
    nlohmann::ordered_json acts = nlohmann::ordered_json::array();
    for (int a : s.actions) acts.push_back(m.action_name(a));
    paths[var] = {{"init", m.state_name(s.init)}, {"actions", acts}};
  }
  nlohmann::ordered_json out;
  out["paths"] = paths;
  if (verified) out["verified"] = to_string(*verified);
  return out.dump(2) + "\n";
}

Witness parse_witness(const Dts& m, std::string_view text) {
  const json j = parse_json(text);
  if (!j.is_object() || !j.contains("paths") || !j["paths"].is_object())
    throw Error(Errc::BadSpec, "witness needs a \"paths\" object");
  Witness w;
  for (const auto& [var, v] : j["paths"].items()) {
    if (!v.is_object() || !v.contains("init") || !v.contains("actions"))
      throw Error(Errc::BadSpec, "witness path " + var + " needs init and actions");
    Strategy s;
    const std::string init = string_field(v["init"], "init");
    auto si = m.state_index(init);
    if (!si) throw Error(Errc::BadSpec, "unknown state " + init);
    s.init = *si;
    for (const auto& a : string_list(v["actions"], "actions")) {
      auto ai = m.action_index(a);
      if (!ai) throw Error(Errc::BadSpec, "unknown action " + a);
      s.actions.push_back(*ai);
    }
    w[var] = s;
  }
  return w;
}

std::string read_file(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw Error(Errc::Io, "cannot read " + path);
  std::ostringstream ss;
  ss << f.rdbuf();
  return ss.str();
}

void write_file(const std::string& path, std::string_view text) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw Error(Errc::Io, "cannot write " + path);
  f << text;
}

}  // namespace hyperplan
