#include "hyperplan/render.hpp"

#include <sstream>

#include "hyperplan/error.hpp"

namespace hyperplan {
namespace {

struct Point {
  int r, c;
};

// on-grid cells of a path; `crashed` reports whether it ends in the crash state
std::vector<Point> cells_of(const GridMap& g, const std::vector<std::string>& path, bool& crashed) {
  std::vector<Point> out;
  crashed = false;
  for (const auto& s : path) {
    if (s == kCrashState) {
      crashed = true;
      break;
    }
    auto rc = cell_of(s);
    if (!rc || !g.free(rc->first, rc->second)) throw Error(Errc::TraceOffGrid, "state " + s + " is not a free cell");
    out.push_back({rc->first, rc->second});
  }
  return out;
}

const char* fill_of(char c) {
  switch (c) {
    case '#': return "#000000";
    case 'S': return "#e03030";
    case 'R': return "#f2a0a0";
    case 'G': return "#3cb043";
    default: return "#ffffff";
  }
}

}  // namespace

std::vector<std::string> state_names(const Dts& m, const Strategy& sigma) {
  std::vector<std::string> out;
  if (sigma.init < 0 || sigma.init >= m.num_states()) return out;
  int cur = sigma.init;
  out.push_back(m.state_name(cur));
  for (int a : sigma.actions) {
    cur = m.next(cur, a);
    if (cur < 0) break;
    out.push_back(m.state_name(cur));
  }
  return out;
}

Rendering render(const GridMap& g, const std::vector<std::vector<std::string>>& paths, const RenderStyle& style) {
  const int cs = style.cell;
  std::ostringstream svg;
  svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << g.cols * cs << "\" height=\"" << g.rows * cs
      << "\" viewBox=\"0 0 " << g.cols * cs << " " << g.rows * cs << "\">\n";
  for (int r = 0; r < g.rows; ++r)
    for (int c = 0; c < g.cols; ++c)
      svg << "  <rect x=\"" << c * cs << "\" y=\"" << r * cs << "\" width=\"" << cs << "\" height=\"" << cs
          << "\" fill=\"" << fill_of(g.at(r, c)) << "\" stroke=\"#999999\" stroke-width=\"1\"/>\n";

  std::vector<std::string> ascii = g.cells;
  std::ostringstream legend;
  for (std::size_t k = 0; k < paths.size(); ++k) {
    bool crashed = false;
    const auto pts = cells_of(g, paths[k], crashed);
    const std::string& stroke = style.strokes[k % style.strokes.size()];
    const int off = static_cast<int>(k) * 3 - static_cast<int>(paths.size() - 1) * 3 / 2;
    auto cx = [&](const Point& p) { return p.c * cs + cs / 2 + off; };
    auto cy = [&](const Point& p) { return p.r * cs + cs / 2 + off; };
    if (!pts.empty()) {
      svg << "  <polyline fill=\"none\" stroke=\"" << stroke << "\" stroke-width=\"3\" points=\"";
      for (std::size_t i = 0; i < pts.size(); ++i) svg << (i ? " " : "") << cx(pts[i]) << "," << cy(pts[i]);
      svg << "\"/>\n";
      svg << "  <circle cx=\"" << cx(pts.front()) << "\" cy=\"" << cy(pts.front()) << "\" r=\"4\" fill=\"" << stroke
          << "\"/>\n";
      if (crashed) {
        const int x = cx(pts.back()), y = cy(pts.back()), d = cs / 3;
        svg << "  <path d=\"M" << x - d << "," << y - d << " L" << x + d << "," << y + d << " M" << x - d << ","
            << y + d << " L" << x + d << "," << y - d << "\" stroke=\"" << stroke << "\" stroke-width=\"3\"/>\n";
      }
    }
    const char mark = static_cast<char>('1' + static_cast<int>(k % 9));
    for (const auto& p : pts) {
      char& cell = ascii[static_cast<std::size_t>(p.r)][static_cast<std::size_t>(p.c)];
      cell = (cell >= '1' && cell <= '9' && cell != mark) ? '*' : mark;
    }
    if (crashed && !pts.empty()) ascii[static_cast<std::size_t>(pts.back().r)][static_cast<std::size_t>(pts.back().c)] = 'X';
    legend << mark << ":";
    for (const auto& s : paths[k]) legend << " " << s;
    legend << "\n";
  }
  svg << "</svg>\n";

  std::string text;
  for (const auto& row : ascii) text += row + "\n";
  return {svg.str(), text + legend.str()};
}

}  // namespace hyperplan
