#include "hyperplan/dts.hpp"

#include <sstream>

#include "hyperplan/error.hpp"
#include "hyperplan/formula.hpp"

namespace hyperplan {

Dts::Dts(std::vector<std::string> states, std::vector<std::string> actions)
    : states_(std::move(states)), actions_(std::move(actions)) {
  for (std::size_t i = 0; i < states_.size(); ++i) {
    if (states_[i].empty()) throw Error(Errc::InvalidModel, "empty state name");
    if (!state_ids_.emplace(states_[i], static_cast<int>(i)).second)
      throw Error(Errc::InvalidModel, "duplicate state " + states_[i]);
  }
  for (std::size_t i = 0; i < actions_.size(); ++i) {
    if (actions_[i] == kEpsilon) throw Error(Errc::InvalidModel, "'eps' is reserved and cannot name an action");
    if (!action_ids_.emplace(actions_[i], static_cast<int>(i)).second)
      throw Error(Errc::InvalidModel, "duplicate action " + actions_[i]);
  }
  trans_.assign(states_.size() * actions_.size(), -1);
  labels_.resize(states_.size());
}

std::optional<int> Dts::state_index(std::string_view name) const {
  auto it = state_ids_.find(name);
  if (it == state_ids_.end()) return std::nullopt;
  return it->second;
}

std::optional<int> Dts::action_index(std::string_view name) const {
  auto it = action_ids_.find(name);
  if (it == action_ids_.end()) return std::nullopt;
  return it->second;
}

void Dts::add_transition(int from, int action, int to) {
  if (from < 0 || from >= num_states() || to < 0 || to >= num_states() || action < 0 || action >= num_actions())
    throw Error(Errc::InvalidModel, "transition index out of range");
  int& slot = trans_[static_cast<std::size_t>(from * num_actions() + action)];
  if (slot != -1 && slot != to)
    throw Error(Errc::InvalidModel, "nondeterministic transition from " + state_name(from) + " on " +
                                        action_name(action));
  slot = to;
}

void Dts::add_transition(std::string_view from, std::string_view action, std::string_view to) {
  auto s = state_index(from), a = action_index(action), t = state_index(to);
  if (!s) throw Error(Errc::InvalidModel, "unknown state " + std::string(from));
  if (!a) throw Error(Errc::InvalidModel, "unknown action " + std::string(action));
  if (!t) throw Error(Errc::InvalidModel, "unknown state " + std::string(to));
  add_transition(*s, *a, *t);
}

void Dts::add_label(std::string_view state, std::string prop) {
  auto s = state_index(state);
  if (!s) throw Error(Errc::InvalidModel, "label for unknown state " + std::string(state));
  labels_[static_cast<std::size_t>(*s)].insert(std::move(prop));
}

bool Dts::is_total() const {
  for (int t : trans_)
    if (t < 0) return false;
  return true;
}

std::set<std::string> Dts::propositions() const {
  std::set<std::string> out;
  for (const auto& l : labels_) out.insert(l.begin(), l.end());
  return out;
}

int AugDts::initial_state(int base) const {
  // (eps, s) states are emitted first, in base-state order
  return base;
}

AugDts augment(const Dts& m) {
  const int n = m.num_states();
  const int k = m.num_actions();
  std::vector<std::vector<bool>> entered(static_cast<std::size_t>(k), std::vector<bool>(static_cast<std::size_t>(n)));
  for (int s = 0; s < n; ++s)
    for (int a = 0; a < k; ++a)
      if (int t = m.next(s, a); t >= 0) entered[static_cast<std::size_t>(a)][static_cast<std::size_t>(t)] = true;

  std::vector<std::pair<int, int>> origin;
  for (int s = 0; s < n; ++s) origin.emplace_back(-1, s);
  for (int a = 0; a < k; ++a)
    for (int s = 0; s < n; ++s)
      if (entered[static_cast<std::size_t>(a)][static_cast<std::size_t>(s)]) origin.emplace_back(a, s);

  std::vector<std::string> names;
  std::map<std::pair<int, int>, int> index;
  for (const auto& [a, s] : origin) {
    index[{a, s}] = static_cast<int>(names.size());
    names.push_back("(" + (a < 0 ? std::string(kEpsilon) : m.action_name(a)) + "," + m.state_name(s) + ")");
  }

  AugDts out{Dts(names, m.actions()), origin};
  for (std::size_t i = 0; i < origin.size(); ++i) {
    const auto [prev, base] = origin[i];
    for (const auto& p : m.labels(base)) out.dts.add_label(names[i], p);
    out.dts.add_label(names[i], prev < 0 ? std::string(kEpsilon) : m.action_name(prev));
    out.dts.add_label(names[i], m.state_name(base));
    for (int a = 0; a < k; ++a)
      if (int t = m.next(base, a); t >= 0) out.dts.add_transition(static_cast<int>(i), a, index.at({a, t}));
  }
  return out;
}

std::optional<std::vector<int>> run(const Dts& m, const Strategy& sigma) {
  if (sigma.init < 0 || sigma.init >= m.num_states()) return std::nullopt;
  std::vector<int> states{sigma.init};
  for (int a : sigma.actions) {
    if (a < 0 || a >= m.num_actions()) return std::nullopt;
    const int t = m.next(states.back(), a);
    if (t < 0) return std::nullopt;
    states.push_back(t);
  }
  return states;
}

namespace {

std::vector<int> run_or_throw(const Dts& m, const Strategy& sigma) {
  if (sigma.init < 0 || sigma.init >= m.num_states()) throw Error(Errc::InvalidModel, "initial state out of range");
  std::vector<int> states{sigma.init};
  for (std::size_t t = 0; t < sigma.actions.size(); ++t) {
    const int a = sigma.actions[t];
    const int nxt = (a >= 0 && a < m.num_actions()) ? m.next(states.back(), a) : -1;
    if (nxt < 0) throw UndefinedTransition(static_cast<int>(t));
    states.push_back(nxt);
  }
  return states;
}

}  // namespace

Trace path_of(const Dts& m, const Strategy& sigma) {
  Trace out;
  for (int s : run_or_throw(m, sigma)) out.push_back(m.labels(s));
  return out;
}

LabelSet aug_labels(const Dts& m, int state, int prev_action) {
  LabelSet l = m.labels(state);
  l.insert(m.state_name(state));
  l.insert(prev_action < 0 ? std::string(kEpsilon) : m.action_name(prev_action));
  return l;
}

Trace correspond(const Dts& m, const Strategy& sigma) {
  const auto states = run_or_throw(m, sigma);
  Trace out;
  for (std::size_t t = 0; t < states.size(); ++t)
    out.push_back(aug_labels(m, states[t], t == 0 ? -1 : sigma.actions[t - 1]));
  return out;
}

namespace {

std::vector<std::string> words(std::string_view line) {
  std::vector<std::string> out;
  std::istringstream is{std::string(line)};
  for (std::string w; is >> w;) out.push_back(w);
  return out;
}

}  // namespace

Dts parse_dts(std::string_view text) {
  std::vector<std::string> states, actions;
  std::vector<std::vector<std::string>> trans, labels;
  std::istringstream in{std::string(text)};
  int lineno = 0;
  for (std::string line; std::getline(in, line);) {
    ++lineno;
    if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    const auto colon = line.find(':');
    auto head = words(line.substr(0, colon == std::string::npos ? line.size() : colon));
    if (head.empty()) continue;
    if (colon == std::string::npos || head.size() != 1)
      throw Error(Errc::InvalidModel, "line " + std::to_string(lineno) + ": expected 'key: values'");
    auto rest = words(line.substr(colon + 1));
    const std::string& key = head[0];
    if (key == "states") {
      states.insert(states.end(), rest.begin(), rest.end());
    } else if (key == "actions") {
      actions.insert(actions.end(), rest.begin(), rest.end());
    } else if (key == "trans") {
      if (rest.size() != 3) throw Error(Errc::InvalidModel, "line " + std::to_string(lineno) + ": trans needs s a s'");
      trans.push_back(rest);
    } else if (key == "label") {
      if (rest.empty()) throw Error(Errc::InvalidModel, "line " + std::to_string(lineno) + ": label needs a state");
      labels.push_back(rest);
    } else {
      throw Error(Errc::InvalidModel, "line " + std::to_string(lineno) + ": unknown key '" + key + "'");
    }
  }
  if (states.empty()) throw Error(Errc::InvalidModel, "model declares no states");
  Dts m(states, actions);
  for (const auto& t : trans) m.add_transition(t[0], t[1], t[2]);
  for (const auto& l : labels)
    for (std::size_t i = 1; i < l.size(); ++i) m.add_label(l[0], l[i]);
  return m;
}

std::string to_text(const Dts& m) {
  std::ostringstream os;
  os << "states:";
  for (const auto& s : m.states()) os << " " << s;
  os << "\nactions:";
  for (const auto& a : m.actions()) os << " " << a;
  os << "\n";
  for (int s = 0; s < m.num_states(); ++s)
    for (int a = 0; a < m.num_actions(); ++a)
      if (int t = m.next(s, a); t >= 0)
        os << "trans: " << m.state_name(s) << " " << m.action_name(a) << " " << m.state_name(t) << "\n";
  for (int s = 0; s < m.num_states(); ++s) {
    if (m.labels(s).empty()) continue;
    os << "label: " << m.state_name(s);
    for (const auto& p : m.labels(s)) os << " " << p;
    os << "\n";
  }
  return os.str();
}

Dts load_model(std::string_view text, GridMap* grid_out) {
  std::istringstream in{std::string(text)};
  for (std::string line; std::getline(in, line);) {
    auto w = words(line);
    if (!w.empty() && (w[0] == "states:" || w[0].rfind("states:", 0) == 0)) return parse_dts(text);
  }
  GridMap g = parse_grid(text);
  Dts m = from_grid(g);
  if (grid_out) *grid_out = std::move(g);
  return m;
}

}  // namespace hyperplan
