#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "hyperplan/problem.hpp"

namespace hyperplan {

struct BenchCell {
  std::string map_path;
  std::string spec_json;  // spec file contents
  SolveOptions options;
};

struct BenchRow {
  std::string grid;       // rows x cols, or the model file name
  std::string objective;
  int T = -1;
  double seconds = 0;
  std::string outcome;    // realizable / unrealizable / unknown / error
  int iterations = 0;
  std::string detail;     // verification or error message
};

struct BenchReport {
  std::vector<BenchRow> rows;
  std::string text() const;
  std::string csv() const;
};

/// Suite file: {"cells": [{"map": path, "spec": object-or-path, "time_limit_s": n, ...}]};
/// relative paths resolve against `base_dir`.
std::vector<BenchCell> parse_suite(std::string_view json_text, const std::string& base_dir);

/// Runs every cell (sequentially unless jobs > 1); failures become error rows.
BenchReport bench(const std::vector<BenchCell>& cells, int jobs = 1);

}  // namespace hyperplan
