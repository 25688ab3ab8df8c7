#pragma once

#include <cstdint>
#include <map>
#include <string>

#include "hyperplan/dts.hpp"
#include "hyperplan/formula.hpp"
#include "hyperplan/horizon.hpp"

namespace hyperplan {

enum class Backend { Auto, Enumeration, Cegis, External };
enum class Dialect { CnfDimacs, SmtLib2 };

struct SolveOptions {
  Backend backend = Backend::Auto;
  std::uint64_t node_budget = 20'000'000;   // enumeration game-tree nodes
  int max_iters = 100'000;                  // CEGIS refinements
  double time_limit_s = 0;                  // 0: no limit
  std::uint64_t check_budget = 2'000'000;   // exhaustive witness-check leaves
  int samples = 2000;                       // witness-check samples beyond the budget
  std::uint64_t seed = 0;
  bool randomized = false;                  // randomized SAT decisions/restarts
  int workers = 1;
  Dialect dialect = Dialect::SmtLib2;       // external backend
  std::string export_path;
  std::string solver_cmd;                   // falls back to $HYPERPLAN_SOLVER_CMD
};

struct Problem {
  Dts dts;
  CoreFormula formula;
  HorizonMap horizons;
  SolveOptions options;

  /// Number of actions synthesized for the i-th prefix variable.
  int steps(int path_index) const;
  int num_paths() const { return static_cast<int>(formula.prefix.size()); }
  Quant quant(int path_index) const { return formula.prefix[static_cast<std::size_t>(path_index)].kind; }
};

/// Computes horizons; throws UnboundedOperator.
Problem make_problem(Dts dts, CoreFormula formula, SolveOptions options = {});

/// Strategies for existentially quantified variables, keyed by path variable.
using Witness = std::map<std::string, Strategy>;

enum class Verification { Exhaustive, Sampled };

struct Outcome {
  enum class Status { Realizable, Unrealizable, Unknown };
  Status status = Status::Unknown;
  Witness witness;
  Verification verified = Verification::Exhaustive;
  std::string reason;
  int iterations = 0;
  bool checked = false;  // witness already passed check_witness


  bool realizable() const { return status == Status::Realizable; }
};

const char* to_string(Outcome::Status s);
const char* to_string(Verification v);

/// Number of leading existential variables.
int leading_exists(const CoreFormula& f);

/// True for prefixes of the form exists* forall*.
bool is_exists_forall(const CoreFormula& f);

}  // namespace hyperplan
