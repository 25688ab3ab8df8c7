#pragma once

#include <memory>
#include <string>
#include <string_view>
#include <vector>

namespace hyperplan {

/// Bound value for temporal operators written without "[<=n]".
inline constexpr int kUnbounded = -1;

/// Reserved path-free atom; it never holds, so `true` desugars to !(bot & !bot).
inline constexpr std::string_view kReservedAtom = "__bot";

/// Reserved proposition labelling the initial entry of every trace (no previous action).
inline constexpr std::string_view kEpsilon = "eps";

enum class Quant { Exists, ForAll };

struct Quantifier {
  Quant kind;
  std::string var;
  bool operator==(const Quantifier&) const = default;
};

// ---------------------------------------------------------------------------
// Surface syntax

enum class ExprKind {
  Atom,
  True,
  False,
  Not,
  And,
  Or,
  Implies,
  Next,
  Until,
  Finally,
  Globally,
  ActEq,
  ObsEq,
};

struct Expr;
using ExprPtr = std::shared_ptr<const Expr>;

struct Expr {
  ExprKind kind;
  std::string prop;   // Atom
  std::string path;   // Atom, ActEq/ObsEq (first path)
  std::string path2;  // ActEq/ObsEq (second path)
  int bound = kUnbounded;
  ExprPtr lhs;
  ExprPtr rhs;
};

struct Formula {
  std::vector<Quantifier> prefix;
  ExprPtr body;
};

ExprPtr atom(std::string prop, std::string path);
ExprPtr top();
ExprPtr bottom();
ExprPtr neg(ExprPtr e);
ExprPtr conj(ExprPtr a, ExprPtr b);
ExprPtr conj(std::vector<ExprPtr> parts);  // left-nested; empty -> top()
ExprPtr disj(ExprPtr a, ExprPtr b);
ExprPtr implies(ExprPtr a, ExprPtr b);
ExprPtr next(ExprPtr e);
ExprPtr until(ExprPtr a, ExprPtr b, int bound = kUnbounded);
ExprPtr eventually(ExprPtr e, int bound = kUnbounded);
ExprPtr always(ExprPtr e, int bound = kUnbounded);
ExprPtr act_eq(std::string p1, std::string p2);
ExprPtr obs_eq(std::string p1, std::string p2);

bool structurally_equal(const Expr& a, const Expr& b);
bool structurally_equal(const Formula& a, const Formula& b);

/// Prints in the grammar accepted by parse(); binary operators are parenthesized.
std::string to_string(const Expr& e);
std::string to_string(const Formula& f);

/// Parses `formula := quant* body`. Throws SyntaxError, or Error with
/// UnboundPathVar / QuantifierNotInPrefix / DuplicateQuantifier.
Formula parse(std::string_view text);

/// Succeeds iff the formula is closed and its prefix is duplicate-free.
void validate(const Formula& f);

// ---------------------------------------------------------------------------
// Core syntax: atoms, !, &, X, U_T over an arena of hash-consed nodes.

enum class CoreOp { Atom, Not, And, Next, Until };

struct CoreNode {
  CoreOp op;
  int lhs = -1;
  int rhs = -1;
  int bound = kUnbounded;
  std::string prop;
  std::string path;  // empty only for the reserved atom
  bool operator==(const CoreNode&) const = default;
};

struct CoreFormula {
  std::vector<Quantifier> prefix;
  std::vector<CoreNode> nodes;  // children always precede parents
  int root = -1;

  const CoreNode& node(int i) const { return nodes[static_cast<std::size_t>(i)]; }
  int path_index(std::string_view var) const;  // -1 if not in the prefix
};

std::string to_string(const CoreFormula& f);
std::string to_string(const CoreFormula& f, int node);

struct DesugarOptions {
  std::vector<std::string> actions;
  std::vector<std::string> observations;
  /// Expand act(p)=act(q) as a conjunction of (a@p & a@q) instead of biconditionals.
  bool literal_equality = false;
};

CoreFormula desugar(const Formula& f, const DesugarOptions& opts);

/// True iff the body uses only atoms and the four core connectives.
bool is_core(const CoreFormula& f);

}  // namespace hyperplan
