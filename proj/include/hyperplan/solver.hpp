#pragma once

#include <cstdint>
#include <string>

#include "hyperplan/problem.hpp"

namespace hyperplan {

/// Game-tree evaluation of the whole prefix over all valid strategies.
/// Unknown when more than `budget` tree nodes would be visited.
Outcome solve_enumeration(const Problem& p, std::uint64_t budget);

/// Counterexample-guided synthesis for exists* forall* prefixes.
/// Throws Error(PrefixUnsupported) for other prefixes.
Outcome solve_cegis(const Problem& p, int max_iters);

/// As solve_cegis, with some leading existential variables fixed in advance.
/// The returned witness omits the fixed variables; no witness check is run.
Outcome solve_cegis_fixed(const Problem& p, const Witness& fixed, int max_iters);

/// Exports solver text plus a sidecar and optionally runs the configured solver
/// (options.solver_cmd or $HYPERPLAN_SOLVER_CMD) on it.
Outcome solve_external(const Problem& p);

/// Backend dispatch; realizable outcomes are re-verified with check_witness.
Outcome synthesize(const Problem& p);

}  // namespace hyperplan
