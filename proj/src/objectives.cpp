#include "hyperplan/objectives.hpp"

#include "hyperplan/error.hpp"

namespace hyperplan {
namespace {

struct Names {
  ObjectiveKind kind;
  const char* name;
  const char* tag;
};

constexpr Names kNames[] = {
    {ObjectiveKind::ShortestPath, "shortest-path", "Eq. (6)"},
    {ObjectiveKind::LongestPath, "longest-path", "Eq. (7)"},
    {ObjectiveKind::InitStateRobust, "initial-state-robust", "Eq. (9)"},
    {ObjectiveKind::ActionRobust, "action-robust", "Eq. (10)"},
    {ObjectiveKind::InitStateOpaque, "initial-state-opaque", "Eq. (12)"},
    {ObjectiveKind::CurrentStateOpaque, "current-state-opaque", "Eq. (13)"},
};

bool is_prop(const Dts& m, const std::string& p) { return m.state_index(p).has_value() || m.propositions().count(p); }

std::string initial_state(const ObjectiveSpec& spec, const Dts& m) {
  if (!spec.init.empty()) {
    if (!m.state_index(spec.init)) throw Error(Errc::UnknownLabel, "unknown initial state " + spec.init);
    return spec.init;
  }
  std::string found;
  for (int s = 0; s < m.num_states(); ++s) {
    if (!m.labels(s).count("start")) continue;
    if (!found.empty()) throw Error(Errc::BadSpec, "several states are labelled start; give \"init\"");
    found = m.state_name(s);
  }
  if (found.empty()) throw Error(Errc::BadSpec, "no initial state given and no state is labelled start");
  return found;
}

ExprPtr initial_set(const ObjectiveSpec& spec, const Dts& m, const std::string& pv) {
  if (!spec.init_set_label.empty()) {
    if (!is_prop(m, spec.init_set_label)) throw Error(Errc::UnknownLabel, "unknown label " + spec.init_set_label);
    return atom(spec.init_set_label, pv);
  }
  if (spec.init_set.empty()) throw Error(Errc::EmptyInitialSet, "initial-state robustness needs an initial set");
  ExprPtr out;
  for (const auto& s : spec.init_set) {
    if (!m.state_index(s)) throw Error(Errc::UnknownLabel, "unknown state " + s + " in the initial set");
    out = out ? disj(out, atom(s, pv)) : atom(s, pv);
  }
  return out;
}

}  // namespace

DesugarOptions desugar_options(const ObjectiveSpec& spec, const Dts& m) {
  DesugarOptions o;
  o.actions = m.actions();
  o.observations = spec.observations;
  if (o.observations.empty())
    for (const auto& p : m.propositions())
      if (p.rfind("row_", 0) == 0) o.observations.push_back(p);
  for (const auto& p : o.observations)
    if (!is_prop(m, p)) throw Error(Errc::UnknownLabel, "unknown observation " + p);
  return o;
}

Formula instantiate(const ObjectiveSpec& spec, const Dts& m) {
  if (spec.T < 0) throw Error(Errc::BadSpec, "T must be nonnegative");
  const int T = spec.T;
  const std::string si = initial_state(spec, m);
  const std::string& g = spec.goal_label;
  if (!is_prop(m, g)) throw Error(Errc::UnknownLabel, "unknown goal label " + g);
  const bool literal = spec.variant == Variant::Literal;

  auto s = [&](const char* pv) { return atom(si, pv); };
  auto goal = [&](const char* pv) { return atom(g, pv); };
  auto reach = [&](const char* pv) { return eventually(goal(pv), T); };
  auto same_acts = [] { return act_eq("p1", "p2"); };

  Formula f;
  switch (spec.kind) {
    case ObjectiveKind::ShortestPath:
      f.prefix = {{Quant::Exists, "p2"}, {Quant::ForAll, "p1"}};
      if (literal)
        f.body = conj(conj(conj(s("p1"), s("p2")), reach("p2")), eventually(implies(goal("p2"), reach("p1")), T));
      else
        f.body = conj(conj(s("p2"), reach("p2")),
                      implies(s("p1"), neg(until(neg(goal("p2")), conj(goal("p1"), neg(goal("p2"))), T))));
      break;
    case ObjectiveKind::LongestPath:
      f.prefix = {{Quant::Exists, "p2"}, {Quant::ForAll, "p1"}};
      if (literal)
        f.body = conj(conj(s("p1"), s("p2")), eventually(implies(goal("p1"), reach("p2")), T));
      else
        f.body = conj(conj(s("p2"), reach("p2")),
                      implies(conj(s("p1"), reach("p1")),
                              neg(until(neg(goal("p1")), conj(goal("p2"), neg(goal("p1"))), T))));
      break;
    case ObjectiveKind::InitStateRobust:
      f.prefix = {{Quant::Exists, "p1"}, {Quant::ForAll, "p2"}};
      if (literal)
        f.body = conj(conj(conj(s("p1"), initial_set(spec, m, "p2")), conj(reach("p1"), reach("p2"))),
                      always(same_acts(), T));
      else
        f.body = conj(conj(s("p1"), reach("p1")),
                      implies(conj(initial_set(spec, m, "p2"), always(same_acts(), T)), reach("p2")));
      break;
    case ObjectiveKind::ActionRobust: {
      ExprPtr one_fault = always(implies(neg(same_acts()), next(always(same_acts(), T))), T);
      f.prefix = {{Quant::Exists, "p1"}, {Quant::ForAll, "p2"}};
      if (literal)
        f.body = conj(conj(conj(s("p1"), s("p2")), conj(reach("p1"), reach("p2"))), one_fault);
      else
        f.body = conj(conj(s("p1"), reach("p1")), implies(conj(s("p2"), one_fault), reach("p2")));
      break;
    }
    case ObjectiveKind::InitStateOpaque:
      f.prefix = {{Quant::Exists, "p1"}, {Quant::Exists, "p2"}};
      f.body = conj(conj(conj(s("p1"), neg(s("p2"))), always(same_acts(), T)), conj(reach("p1"), reach("p2")));
      // the guarded form also requires identical observations along both paths
      if (!literal && !desugar_options(spec, m).observations.empty()) f.body = conj(f.body, always(obs_eq("p1", "p2"), T));
      break;
    case ObjectiveKind::CurrentStateOpaque:
      f.prefix = {{Quant::Exists, "p1"}, {Quant::Exists, "p2"}};
      f.body = conj(conj(conj(s("p1"), s("p2")), neg(always(same_acts(), T))), always(obs_eq("p1", "p2"), T));
      if (spec.goal_given) f.body = conj(f.body, conj(reach("p1"), reach("p2")));
      break;
  }
  validate(f);
  return f;
}

std::vector<CatalogEntry> catalog() {
  std::vector<CatalogEntry> out;
  for (const auto& n : kNames) out.push_back({n.kind, n.name, n.tag, {Variant::Guarded, Variant::Literal}});
  return out;
}

const char* to_string(ObjectiveKind k) {
  for (const auto& n : kNames)
    if (n.kind == k) return n.name;
  return "?";
}

const char* to_string(Variant v) { return v == Variant::Literal ? "literal" : "guarded"; }

std::optional<ObjectiveKind> parse_objective(std::string_view name) {
  for (const auto& n : kNames)
    if (name == n.name) return n.kind;
  return std::nullopt;
}

}  // namespace hyperplan
