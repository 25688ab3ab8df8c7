#include "hyperplan/problem.hpp"

namespace hyperplan {

int Problem::steps(int path_index) const {
  return horizons.at(formula.prefix[static_cast<std::size_t>(path_index)].var).steps();
}

Problem make_problem(Dts dts, CoreFormula formula, SolveOptions options) {
  Problem p{std::move(dts), std::move(formula), {}, std::move(options)};
  p.horizons = horizons(p.formula);
  return p;
}

const char* to_string(Outcome::Status s) {
  switch (s) {
    case Outcome::Status::Realizable: return "realizable";
    case Outcome::Status::Unrealizable: return "unrealizable";
    case Outcome::Status::Unknown: return "unknown";
  }
  return "?";
}

const char* to_string(Verification v) { return v == Verification::Exhaustive ? "exhaustive" : "sampled"; }

int leading_exists(const CoreFormula& f) {
  int n = 0;
  while (n < static_cast<int>(f.prefix.size()) && f.prefix[static_cast<std::size_t>(n)].kind == Quant::Exists) ++n;
  return n;
}

bool is_exists_forall(const CoreFormula& f) {
  for (std::size_t i = static_cast<std::size_t>(leading_exists(f)); i < f.prefix.size(); ++i)
    if (f.prefix[i].kind != Quant::ForAll) return false;
  return true;
}

}  // namespace hyperplan
