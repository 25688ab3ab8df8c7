#include "hyperplan/bench.hpp"

#include <atomic>
#include <chrono>
#include <filesystem>
#include <iomanip>
#include <sstream>
#include <thread>

#include <json.hpp>

#include "hyperplan/error.hpp"
#include "hyperplan/io.hpp"
#include "hyperplan/solver.hpp"

namespace hyperplan {
namespace {

std::string resolve(const std::string& base, const std::string& p) {
  std::filesystem::path path(p);
  return path.is_absolute() ? p : (std::filesystem::path(base) / path).string();
}

BenchRow run_cell(const BenchCell& cell) {
  BenchRow row;
  row.grid = std::filesystem::path(cell.map_path).filename().string();
  const auto start = std::chrono::steady_clock::now();
  try {
    GridMap g;
    const Dts m = load_model(read_file(cell.map_path), &g);
    if (g.rows > 0) row.grid = std::to_string(g.rows) + "x" + std::to_string(g.cols);
    const SpecFile spec = parse_spec(cell.spec_json);
    row.objective = spec.objective ? to_string(spec.objective->kind) : "formula";
    if (spec.objective) row.T = spec.objective->T;
    const Problem p = load_problem(m, spec, cell.options);
    const Outcome o = synthesize(p);
    row.outcome = to_string(o.status);
    row.iterations = o.iterations;
    row.detail = o.realizable() ? to_string(o.verified) : o.reason;
  } catch (const std::exception& e) {
    row.outcome = "error";
    row.detail = e.what();
  }
  row.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return row;
}

}  // namespace

std::vector<BenchCell> parse_suite(std::string_view text, const std::string& base_dir) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw Error(Errc::BadSpec, std::string("invalid suite JSON: ") + e.what());
  }
  if (!j.is_object() || !j.contains("cells") || !j["cells"].is_array() || j["cells"].empty())
    throw Error(Errc::BadSpec, "suite needs a nonempty \"cells\" list");
  std::vector<BenchCell> out;
  for (const auto& c : j["cells"]) {
    if (!c.is_object() || !c.contains("map") || !c.contains("spec") || !c["map"].is_string())
      throw Error(Errc::BadSpec, "each cell needs \"map\" and \"spec\"");
    BenchCell cell;
    cell.map_path = resolve(base_dir, c["map"].get<std::string>());
    if (c["spec"].is_string()) cell.spec_json = read_file(resolve(base_dir, c["spec"].get<std::string>()));
    else cell.spec_json = c["spec"].dump();
    if (c.contains("time_limit_s")) cell.options.time_limit_s = c["time_limit_s"].get<double>();
    if (c.contains("max_iters")) cell.options.max_iters = c["max_iters"].get<int>();
    if (c.contains("node_budget")) cell.options.node_budget = c["node_budget"].get<std::uint64_t>();
    if (c.contains("seed")) cell.options.seed = c["seed"].get<std::uint64_t>();
    if (c.contains("backend")) {
      const std::string b = c["backend"].get<std::string>();
      if (b == "enumeration") cell.options.backend = Backend::Enumeration;
      else if (b == "cegis") cell.options.backend = Backend::Cegis;
      else if (b != "auto") throw Error(Errc::BadSpec, "unknown backend " + b);
    }
    out.push_back(std::move(cell));
  }
  return out;
}

BenchReport bench(const std::vector<BenchCell>& cells, int jobs) {
  BenchReport r;
  r.rows.resize(cells.size());
  if (jobs <= 1) {
    for (std::size_t i = 0; i < cells.size(); ++i) r.rows[i] = run_cell(cells[i]);
    return r;
  }
  std::atomic<std::size_t> next{0};
  std::vector<std::thread> pool;
  for (int w = 0; w < jobs; ++w)
    pool.emplace_back([&] {
      for (std::size_t i; (i = next++) < cells.size();) r.rows[i] = run_cell(cells[i]);
    });
  for (auto& t : pool) t.join();
  return r;
}

std::string BenchReport::text() const {
  std::vector<std::vector<std::string>> table{{"grid", "objective", "T", "time_s", "outcome", "iters", "detail"}};
  for (const auto& row : rows) {
    std::ostringstream t;
    t << std::fixed << std::setprecision(3) << row.seconds;
    table.push_back({row.grid, row.objective, row.T >= 0 ? std::to_string(row.T) : "-", t.str(), row.outcome,
                     std::to_string(row.iterations), row.detail});
  }
  std::vector<std::size_t> width(table[0].size(), 0);
  for (const auto& line : table)
    for (std::size_t c = 0; c < line.size(); ++c) width[c] = std::max(width[c], line[c].size());
  std::ostringstream os;
  for (const auto& line : table) {
    for (std::size_t c = 0; c < line.size(); ++c) {
      os << line[c];
      if (c + 1 < line.size()) os << std::string(width[c] - line[c].size() + 2, ' ');
    }
    os << "\n";
  }
  return os.str();
}

std::string BenchReport::csv() const {
  auto field = [](const std::string& s) {
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string out = "\"";
    for (char c : s) out += c == '"' ? std::string("\"\"") : std::string(1, c);
    return out + "\"";
  };
  std::ostringstream os;
  os << "grid,objective,T,time_s,outcome,iterations,detail\n";
  for (const auto& row : rows)
    os << field(row.grid) << "," << field(row.objective) << "," << row.T << "," << std::fixed << std::setprecision(3)
       << row.seconds << "," << row.outcome << "," << row.iterations << "," << field(row.detail) << "\n";
  return os.str();
}

}  // namespace hyperplan
