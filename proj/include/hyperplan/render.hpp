#pragma once

#include <string>
#include <vector>

#include "hyperplan/dts.hpp"

namespace hyperplan {

struct RenderStyle {
  int cell = 24;
  /// Stroke per path: the witness first, then the exhibited second path.
  std::vector<std::string> strokes = {"#1f5fd6", "#d62728", "#2ca02c", "#9467bd"};
};

struct Rendering {
  std::string svg;
  std::string ascii;
};

/// Draws the map and one polyline per path (state names, grid cells or crash).
/// Throws Error(TraceOffGrid) for any other state.
Rendering render(const GridMap& g, const std::vector<std::vector<std::string>>& paths, const RenderStyle& style = {});

/// State names visited by a strategy, stopping at the first undefined step.
std::vector<std::string> state_names(const Dts& m, const Strategy& sigma);

}  // namespace hyperplan
