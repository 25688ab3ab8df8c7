#pragma once

#include <optional>
#include <string>
#include <string_view>

#include "hyperplan/dts.hpp"
#include "hyperplan/objectives.hpp"
#include "hyperplan/problem.hpp"

namespace hyperplan {

/// Spec file: either an objective template or a raw formula with alphabets.
struct SpecFile {
  std::optional<ObjectiveSpec> objective;
  std::string formula;
  std::optional<std::vector<std::string>> actions;       // raw formulas; default: model actions
  std::optional<std::vector<std::string>> observations;  // raw formulas; default: row_* labels
  bool literal_equality = false;
};

/// Throws Error(BadSpec) on malformed JSON or unknown fields.
SpecFile parse_spec(std::string_view json_text);

CoreFormula spec_formula(const SpecFile& spec, const Dts& m);
Problem load_problem(const Dts& m, const SpecFile& spec, SolveOptions options = {});

/// {"paths": {"p1": {"init": ..., "actions": [...]}}, "verified": ...}
std::string witness_json(const Dts& m, const Witness& w, std::optional<Verification> verified);
Witness parse_witness(const Dts& m, std::string_view json_text);

std::string read_file(const std::string& path);
void write_file(const std::string& path, std::string_view text);

}  // namespace hyperplan
