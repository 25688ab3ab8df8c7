#pragma once

#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace hyperplan {

using LabelSet = std::set<std::string>;

/// One label set per time step; never empty.
using Trace = std::vector<LabelSet>;

/// Deterministic discrete transition system with a partial transition function.
/// States and actions are addressed by dense indices in declaration order.
class Dts {
 public:
  Dts() = default;
  Dts(std::vector<std::string> states, std::vector<std::string> actions);

  void add_transition(std::string_view from, std::string_view action, std::string_view to);
  void add_transition(int from, int action, int to);
  void add_label(std::string_view state, std::string prop);

  int num_states() const { return static_cast<int>(states_.size()); }
  int num_actions() const { return static_cast<int>(actions_.size()); }
  const std::string& state_name(int s) const { return states_[static_cast<std::size_t>(s)]; }
  const std::string& action_name(int a) const { return actions_[static_cast<std::size_t>(a)]; }
  const std::vector<std::string>& states() const { return states_; }
  const std::vector<std::string>& actions() const { return actions_; }
  std::optional<int> state_index(std::string_view name) const;
  std::optional<int> action_index(std::string_view name) const;

  /// Successor of `s` under `a`, or -1 where the transition is undefined.
  int next(int s, int a) const { return trans_[static_cast<std::size_t>(s * num_actions() + a)]; }
  bool is_total() const;

  const LabelSet& labels(int s) const { return labels_[static_cast<std::size_t>(s)]; }
  /// Every proposition used by some state label.
  std::set<std::string> propositions() const;

  bool operator==(const Dts&) const = default;

 private:
  std::vector<std::string> states_;
  std::vector<std::string> actions_;
  std::map<std::string, int, std::less<>> state_ids_;
  std::map<std::string, int, std::less<>> action_ids_;
  std::vector<int> trans_;
  std::vector<LabelSet> labels_;
};

/// Augmentation: states are (previous action or epsilon, base state) pairs and
/// carry both the action and the base state name as labels.
struct AugDts {
  Dts dts;
  /// (previous action index or -1 for epsilon, base state index) per augmented state.
  std::vector<std::pair<int, int>> origin;
  int initial_state(int base) const;  // index of (eps, base)
};

struct Strategy {
  int init = 0;
  std::vector<int> actions;
  bool operator==(const Strategy&) const = default;
};

AugDts augment(const Dts& m);

/// State sequence generated by `sigma`, or nullopt at the first undefined step.
std::optional<std::vector<int>> run(const Dts& m, const Strategy& sigma);

/// Labels along the generated path. Throws UndefinedTransition(t).
Trace path_of(const Dts& m, const Strategy& sigma);

/// Labels of the augmented path (eps,s0)(a0,s1)...: labels(s) plus the state
/// name and the previous action (or eps). Throws UndefinedTransition(t).
Trace correspond(const Dts& m, const Strategy& sigma);

/// Augmented labels for one step of a path.
LabelSet aug_labels(const Dts& m, int state, int prev_action);

/// Line-oriented text format: `states:`, `actions:`, `trans: s a s'`, `label: s p...`.
Dts parse_dts(std::string_view text);
std::string to_text(const Dts& m);

// ---------------------------------------------------------------------------
// Grid worlds

struct GridOptions {
  bool row_observation = false;
};

struct GridMap {
  int rows = 0;
  int cols = 0;
  std::vector<std::string> cells;  // '#', '.', 'S', 'G', 'R'
  GridOptions options;

  char at(int r, int c) const { return cells[static_cast<std::size_t>(r)][static_cast<std::size_t>(c)]; }
  bool free(int r, int c) const { return r >= 0 && c >= 0 && r < rows && c < cols && at(r, c) != '#'; }
};

inline constexpr std::string_view kCrashState = "crash";

/// `options: row_observation` header lines followed by equal-width rows.
GridMap parse_grid(std::string_view text);

/// One state `r{row}c{col}` per free cell plus an absorbing `crash` state;
/// actions U, D, L, R; blocked moves lead to `crash`.
Dts from_grid(const GridMap& g, const GridOptions& opts);
Dts from_grid(const GridMap& g);

std::string cell_state(int r, int c);
/// (row, col) of a grid state name; nullopt for `crash` or foreign names.
std::optional<std::pair<int, int>> cell_of(std::string_view state);

/// Reads either model format, deciding by the presence of a `states:` line.
Dts load_model(std::string_view text, GridMap* grid_out = nullptr);

}  // namespace hyperplan
