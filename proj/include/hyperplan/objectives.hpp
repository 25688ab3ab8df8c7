#pragma once

#include <optional>
#include <string>
#include <vector>

#include "hyperplan/dts.hpp"
#include "hyperplan/formula.hpp"

namespace hyperplan {

enum class ObjectiveKind { ShortestPath, LongestPath, InitStateRobust, ActionRobust, InitStateOpaque, CurrentStateOpaque };

/// Literal follows the printed template; Guarded wraps the universal side in an
/// implication (strict no-earlier-arrival encoding for path-length objectives).
enum class Variant { Literal, Guarded };

struct ObjectiveSpec {
  ObjectiveKind kind = ObjectiveKind::ShortestPath;
  int T = 0;
  std::string init;                      // empty: the unique state labelled "start"
  std::string goal_label = "goal";
  bool goal_given = false;               // adds the reach-goal conjunct to current-state opacity
  std::string init_set_label;            // S_0 as a label ...
  std::vector<std::string> init_set;     // ... or as explicit states
  std::vector<std::string> observations; // empty: every row_* label of the model
  Variant variant = Variant::Guarded;
};

/// Template instance over path variables p1, p2. Throws Error(UnknownLabel) or Error(EmptyInitialSet).
Formula instantiate(const ObjectiveSpec& spec, const Dts& m);

/// Alphabets used to expand act()/obs() equalities for this spec.
DesugarOptions desugar_options(const ObjectiveSpec& spec, const Dts& m);

struct CatalogEntry {
  ObjectiveKind kind;
  std::string name;  // spec-file spelling
  std::string tag;   // equation label
  std::vector<Variant> variants;
};

std::vector<CatalogEntry> catalog();

const char* to_string(ObjectiveKind k);
const char* to_string(Variant v);
std::optional<ObjectiveKind> parse_objective(std::string_view name);

}  // namespace hyperplan
