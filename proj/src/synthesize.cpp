#include "hyperplan/error.hpp"
#include "hyperplan/semantics.hpp"
#include "hyperplan/solver.hpp"

namespace hyperplan {

Outcome synthesize(const Problem& p) {
  Outcome out;
  switch (p.options.backend) {
    case Backend::Enumeration: out = solve_enumeration(p, p.options.node_budget); break;
    case Backend::External: out = solve_external(p); break;
    case Backend::Cegis:
    case Backend::Auto:
      if (is_exists_forall(p.formula)) out = solve_cegis(p, p.options.max_iters);
      else out = solve_enumeration(p, p.options.node_budget);
      break;
  }
  if (out.realizable() && !out.checked) {
    const CheckResult r = check_witness(p, out.witness, p.options.check_budget);
    if (!r.holds) {
      out.status = Outcome::Status::Unknown;
      out.reason = "witness failed verification";
      out.witness.clear();
      return out;
    }
    out.verified = r.verified;
    out.checked = true;
  }
  return out;
}

}  // namespace hyperplan
