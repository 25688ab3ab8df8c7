#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "hyperplan/dts.hpp"
#include "hyperplan/formula.hpp"
#include "hyperplan/problem.hpp"

namespace hyperplan {

using Assignment = std::map<std::string, Trace, std::less<>>;

/// Truth of the body at time t. Each trace is read at min(t, len-1), i.e. a finite
/// trace behaves like its infinite extension repeating the last entry.
/// Throws Error(MissingPathVar) if a body variable has no trace.
bool evaluate(const CoreFormula& f, const Assignment& v, int t = 0);
bool evaluate(const CoreFormula& f, int node, const Assignment& v, int t);

/// Memoized evaluator with traces bound by prefix position. Rebinding a path
/// invalidates the memo; evaluation cost is O(nodes * T * max trace length).
class Evaluator {
 public:
  explicit Evaluator(const CoreFormula& f);

  void bind(int path_index, const Trace& trace);
  void unbind(int path_index);
  bool at(int node, int t);
  bool root() { return at(f_.root, 0); }

 private:
  bool compute(int node, int t);
  int clamp(int node, int t) const;

  const CoreFormula& f_;
  std::vector<int> atom_path_;                  // per node: prefix index, -1 reserved, -2 unbound name
  std::vector<std::vector<char>> atom_truth_;   // per atom node, per trace step
  std::vector<int> trace_len_;                  // per prefix index, 0 if unbound
  std::vector<int> saturation_;                 // per node
  std::vector<std::vector<signed char>> memo_;  // per node, per clamped time
  bool dirty_ = true;
};

/// Valid strategies with exactly `steps` actions, in lexicographic (init, actions) order.
/// Returns nullopt when more than `limit` exist.
std::optional<std::vector<Strategy>> valid_strategies(const Dts& m, int steps, std::uint64_t limit);
std::optional<std::vector<Strategy>> valid_strategies_from(const Dts& m, int init, int steps, std::uint64_t limit);

/// Number of valid strategies with `steps` actions (saturating at 2^62).
std::uint64_t count_valid_strategies(const Dts& m, int steps);

struct CheckResult {
  bool holds = false;
  Verification verified = Verification::Exhaustive;
  /// Violating assignment for the free variables, when one was found.
  std::optional<Witness> counterexample;
};

/// Fixes the witness paths (a subset of the leading existential variables) and
/// decides the rest of the prefix: by exhaustive game-tree enumeration when the
/// remaining space has at most `budget` leaves, otherwise (forall-only remainder)
/// by a SAT search for a violation plus random sampling, reported as Sampled.
/// Witness strategies may be shorter than the horizon; their traces are clamped.
/// Throws Error(WitnessPathUndefined) or Error(PrefixUnsupported).
CheckResult check_witness(const Problem& p, const Witness& w, std::uint64_t budget);

}  // namespace hyperplan
