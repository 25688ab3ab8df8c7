#include <charconv>
#include <sstream>

#include "hyperplan/dts.hpp"
#include "hyperplan/error.hpp"

namespace hyperplan {

GridMap parse_grid(std::string_view text) {
  GridMap g;
  std::istringstream in{std::string(text)};
  for (std::string line; std::getline(in, line);) {
    while (!line.empty() && (line.back() == '\r' || line.back() == ' ' || line.back() == '\t')) line.pop_back();
    if (line.empty()) continue;
    if (line.rfind("options:", 0) == 0) {
      std::istringstream opts(line.substr(8));
      for (std::string o; opts >> o;) {
        if (o == "row_observation") g.options.row_observation = true;
        else throw Error(Errc::InvalidModel, "unknown grid option '" + o + "'");
      }
      continue;
    }
    if (line.find_first_not_of("#.SGR") != std::string::npos)
      throw Error(Errc::InvalidModel, "grid row " + std::to_string(g.rows) + " has a character outside '#.SGR'");
    if (g.rows > 0 && static_cast<int>(line.size()) != g.cols)
      throw Error(Errc::InvalidModel, "grid rows differ in width");
    g.cols = static_cast<int>(line.size());
    g.cells.push_back(line);
    ++g.rows;
  }
  if (g.rows == 0 || g.cols == 0) throw Error(Errc::EmptyGrid, "grid has no cells");
  return g;
}

std::string cell_state(int r, int c) { return "r" + std::to_string(r) + "c" + std::to_string(c); }

std::optional<std::pair<int, int>> cell_of(std::string_view state) {
  if (state.size() < 4 || state[0] != 'r') return std::nullopt;
  const auto cpos = state.find('c');
  if (cpos == std::string_view::npos) return std::nullopt;
  int r = 0, c = 0;
  auto [p1, e1] = std::from_chars(state.data() + 1, state.data() + cpos, r);
  auto [p2, e2] = std::from_chars(state.data() + cpos + 1, state.data() + state.size(), c);
  if (e1 != std::errc{} || e2 != std::errc{} || p1 != state.data() + cpos || p2 != state.data() + state.size())
    return std::nullopt;
  return std::make_pair(r, c);
}

Dts from_grid(const GridMap& g, const GridOptions& opts) {
  if (g.rows == 0 || g.cols == 0) throw Error(Errc::EmptyGrid, "grid has no cells");
  std::vector<std::string> states;
  for (int r = 0; r < g.rows; ++r)
    for (int c = 0; c < g.cols; ++c)
      if (g.free(r, c)) states.push_back(cell_state(r, c));
  if (states.empty()) throw Error(Errc::NoFreeCell, "grid has only obstacles");
  states.emplace_back(kCrashState);

  Dts m(states, {"U", "D", "L", "R"});
  const int crash = m.num_states() - 1;
  constexpr int dr[] = {-1, 1, 0, 0};
  constexpr int dc[] = {0, 0, -1, 1};
  int s = 0;
  for (int r = 0; r < g.rows; ++r) {
    for (int c = 0; c < g.cols; ++c) {
      if (!g.free(r, c)) continue;
      for (int a = 0; a < 4; ++a) {
        const int nr = r + dr[a], nc = c + dc[a];
        m.add_transition(s, a, g.free(nr, nc) ? *m.state_index(cell_state(nr, nc)) : crash);
      }
      const std::string name = cell_state(r, c);
      switch (g.at(r, c)) {
        case 'G': m.add_label(name, "goal"); break;
        case 'R': m.add_label(name, "init_region"); break;
        case 'S': m.add_label(name, "start"); break;
        default: break;
      }
      if (opts.row_observation) m.add_label(name, "row_" + std::to_string(r));
      ++s;
    }
  }
  for (int a = 0; a < 4; ++a) m.add_transition(crash, a, crash);
  m.add_label(kCrashState, "crash");
  return m;
}

Dts from_grid(const GridMap& g) { return from_grid(g, g.options); }

}  // namespace hyperplan
