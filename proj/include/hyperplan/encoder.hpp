#pragma once

#include <map>
#include <memory>
#include <string>
#include <tuple>
#include <unordered_map>
#include <vector>

#include "hyperplan/dts.hpp"
#include "hyperplan/formula.hpp"
#include "hyperplan/problem.hpp"
#include "hyperplan/sat.hpp"

namespace hyperplan {

/// Tseitin gates with constant folding and structural hashing. The first
/// variable allocated is a constant TRUE fixed by a unit clause.
class GateBuilder {
 public:
  explicit GateBuilder(ClauseSink& sink);

  int top() const { return true_; }
  int bottom() const { return -true_; }
  bool is_const(int l) const { return l == true_ || l == -true_; }

  int land(int a, int b) { return land(std::vector<int>{a, b}); }
  int land(std::vector<int> xs);
  int lor(int a, int b) { return -land(-a, -b); }
  int lor(std::vector<int> xs);

  ClauseSink& sink() { return sink_; }

  /// Gate variables in creation order with their (sorted) AND inputs.
  const std::vector<std::pair<int, std::vector<int>>>& gates() const { return gates_; }

 private:
  ClauseSink& sink_;
  int true_;
  std::map<std::vector<int>, int> cache_;
  std::vector<std::pair<int, std::vector<int>>> gates_;
};

/// Literals describing one path: the state at t (0..steps) and the action at t (0..steps-1).
class PathLits {
 public:
  virtual ~PathLits() = default;
  virtual int steps() const = 0;
  virtual int state(int t, int s) = 0;
  virtual int action(int t, int a) = 0;
};

/// One-hot block of a path variable: x[t][s] and y[t][a].
struct PathBlock {
  std::vector<std::vector<int>> x;
  std::vector<std::vector<int>> y;
  int steps() const { return static_cast<int>(y.size()); }
};

/// Exactly-one groups plus transition and blocking clauses for a path with `steps` actions.
PathBlock encode_path_constraint(ClauseSink& sink, const Dts& m, int steps);

/// Adds clauses forcing exactly one literal of `group` true.
void exactly_one(ClauseSink& sink, const std::vector<int>& group);

class SymbolicPath : public PathLits {
 public:
  explicit SymbolicPath(PathBlock block) : block_(std::move(block)) {}
  int steps() const override { return block_.steps(); }
  int state(int t, int s) override { return block_.x[static_cast<std::size_t>(t)][static_cast<std::size_t>(s)]; }
  int action(int t, int a) override { return block_.y[static_cast<std::size_t>(t)][static_cast<std::size_t>(a)]; }
  const PathBlock& block() const { return block_; }

 private:
  PathBlock block_;
};

/// A fixed strategy; all literals are constants. The strategy must be valid.
class ConstPath : public PathLits {
 public:
  ConstPath(const Dts& m, const Strategy& sigma, const GateBuilder& g);
  int steps() const override { return static_cast<int>(sigma_.actions.size()); }
  int state(int t, int s) override { return states_[static_cast<std::size_t>(t)] == s ? top_ : -top_; }
  int action(int t, int a) override { return sigma_.actions[static_cast<std::size_t>(t)] == a ? top_ : -top_; }

 private:
  Strategy sigma_;
  std::vector<int> states_;
  int top_;
};

/// A path whose initial state and actions are each either a constant or a copy
/// of the corresponding choice of another (symbolic) path. States are derived
/// through gates; the path may be invalid for some choices, see valid().
class LinkedPath : public PathLits {
 public:
  struct Choice {
    int value = 0;              // constant choice
    SymbolicPath* link = nullptr;  // when set, copy this path's choice
  };

  LinkedPath(const Dts& m, GateBuilder& g, Choice init, std::vector<Choice> actions);
  int steps() const override { return static_cast<int>(actions_.size()); }
  int state(int t, int s) override;
  int action(int t, int a) override;
  /// True iff every transition along the path is defined.
  int valid();

 private:
  const Dts& m_;
  GateBuilder& g_;
  Choice init_;
  std::vector<Choice> actions_;
  std::vector<std::vector<int>> cache_;  // per t, per state; 0 = not built
  std::vector<std::vector<std::pair<int, int>>> preds_;  // per state: (prev state, action)
};

/// Unrolls a core formula over path literal providers (one per prefix variable).
class Unroller {
 public:
  Unroller(const CoreFormula& f, const Dts& m, GateBuilder& g, std::vector<PathLits*> paths);

  int at(int node, int t);
  int root() { return at(f_.root, 0); }
  /// Literal for atom node `node` on its path at time t.
  int atom(int node, int t);

 private:
  int until(int node, int t, int k);

  const CoreFormula& f_;
  const Dts& m_;
  GateBuilder& g_;
  std::vector<PathLits*> paths_;
  std::vector<int> saturation_;
  std::vector<std::vector<int>> memo_;
  std::map<std::tuple<int, int, int>, int> until_memo_;
};

/// Per-prefix-variable block of an encoding.
struct AtlasEntry {
  std::string var;
  Quant kind;
  PathBlock block;
};

struct VarAtlas {
  std::vector<AtlasEntry> entries;  // prefix order
};

struct QuantifiedEncoding {
  std::vector<Quantifier> prefix;
  VarAtlas atlas;
  Cnf matrix;  // path constraints, gate definitions and the unit root clause
  int root = 0;
  std::vector<std::pair<int, std::vector<int>>> gates;
};

/// Builds the propositional matrix; throws Error(UnknownAtom).
QuantifiedEncoding encode_problem(const Problem& p);

/// Decodes the strategy of an atlas block from a model.
Strategy decode(const PathBlock& block, const std::vector<bool>& model);

/// Text for external solvers. DIMACS requires an existential-only prefix
/// (Error AlternationUnsupported otherwise).
std::string to_solver_text(const Problem& p, const QuantifiedEncoding& e, Dialect d);
/// JSON mapping exported variable names to (path, time, kind).
std::string sidecar_json(const Problem& p, const QuantifiedEncoding& e, Dialect d);

}  // namespace hyperplan
