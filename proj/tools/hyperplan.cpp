#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <optional>

#include <CLI11.hpp>

#include "hyperplan/bench.hpp"
#include "hyperplan/encoder.hpp"
#include "hyperplan/error.hpp"
#include "hyperplan/io.hpp"
#include "hyperplan/render.hpp"
#include "hyperplan/semantics.hpp"
#include "hyperplan/solver.hpp"

using namespace hyperplan;

namespace {

enum Exit { kPass = 0, kFail = 1, kUnknown = 2, kUsage = 3 };

struct Common {
  std::string model;
  std::string spec;
  std::string backend = "auto";
  double time_limit = 0;
  int max_iters = 100'000;
  std::uint64_t node_budget = 20'000'000;
  std::uint64_t check_budget = 2'000'000;
  int samples = 2000;
  std::uint64_t seed = 0;
  bool randomized = false;
  int workers = 1;
  std::string dialect = "smtlib2";
  std::string export_path;
};

void add_model_spec(CLI::App* app, Common& c) {
  app->add_option("-m,--model", c.model, "DTS or grid map file")->required()->check(CLI::ExistingFile);
  app->add_option("-s,--spec", c.spec, "objective or formula spec (JSON)")->required()->check(CLI::ExistingFile);
}

void add_budgets(CLI::App* app, Common& c) {
  app->add_option("--backend", c.backend, "auto, cegis, enumeration or external")
      ->check(CLI::IsMember({"auto", "cegis", "enumeration", "external"}));
  app->add_option("--time-limit", c.time_limit, "seconds, 0 for none")->check(CLI::NonNegativeNumber);
  app->add_option("--max-iters", c.max_iters, "CEGIS refinement limit")->check(CLI::PositiveNumber);
  app->add_option("--node-budget", c.node_budget, "enumeration game-tree nodes")->check(CLI::PositiveNumber);
  app->add_option("--check-budget", c.check_budget, "exhaustive witness-check leaves")->check(CLI::PositiveNumber);
  app->add_option("--samples", c.samples, "witness-check samples beyond the check budget")->check(CLI::NonNegativeNumber);
  app->add_option("--seed", c.seed, "random seed");
  app->add_flag("--randomized", c.randomized, "randomized SAT decisions");
  app->add_option("--workers", c.workers, "threads for exhaustive checks")->check(CLI::PositiveNumber);
  app->add_option("--dialect", c.dialect, "external solver text: cnf-dimacs or smtlib2")
      ->check(CLI::IsMember({"cnf-dimacs", "smtlib2"}));
  app->add_option("--export", c.export_path, "external solver text path");
}

SolveOptions options_of(const Common& c) {
  SolveOptions o;
  o.backend = c.backend == "cegis"         ? Backend::Cegis
              : c.backend == "enumeration" ? Backend::Enumeration
              : c.backend == "external"    ? Backend::External
                                           : Backend::Auto;
  o.time_limit_s = c.time_limit;
  o.max_iters = c.max_iters;
  o.node_budget = c.node_budget;
  o.check_budget = c.check_budget;
  o.samples = c.samples;
  o.seed = c.seed;
  o.randomized = c.randomized;
  o.workers = c.workers;
  o.dialect = c.dialect == "cnf-dimacs" ? Dialect::CnfDimacs : Dialect::SmtLib2;
  o.export_path = c.export_path;
  return o;
}

struct Loaded {
  GridMap grid;
  Dts dts;
  Problem problem;
};

Loaded load(const Common& c) {
  Loaded l;
  l.dts = load_model(read_file(c.model), &l.grid);
  l.problem = load_problem(l.dts, parse_spec(read_file(c.spec)), options_of(c));
  return l;
}

void write_or_print(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-") std::cout << text;
  else write_file(path, text);
}

// renders the witness paths in variable order; needs a grid model
void render_paths(const Loaded& l, const Witness& w, const std::string& svg, const std::string& ascii) {
  if (svg.empty() && ascii.empty()) return;
  if (l.grid.rows == 0) throw Error(Errc::BadSpec, "rendering needs a grid map");
  std::vector<std::vector<std::string>> paths;
  for (const auto& [var, s] : w) paths.push_back(state_names(l.dts, s));
  const Rendering r = render(l.grid, paths);
  if (!svg.empty()) write_or_print(svg, r.svg);
  if (!ascii.empty()) write_or_print(ascii, r.ascii);
}

int exit_of(Outcome::Status s) {
  switch (s) {
    case Outcome::Status::Realizable: return kPass;
    case Outcome::Status::Unrealizable: return kFail;
    case Outcome::Status::Unknown: return kUnknown;
  }
  return kUnknown;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Plan synthesis from bounded hyperproperty objectives on discrete transition systems"};
  app.require_subcommand(1);

  Common syn;
  std::string syn_out, syn_svg, syn_ascii;
  auto* s = app.add_subcommand("synthesize", "synthesize witness strategies");
  add_model_spec(s, syn);
  add_budgets(s, syn);
  s->add_option("-o,--out", syn_out, "witness JSON path (default: stdout)");
  s->add_option("--svg", syn_svg, "SVG rendering of the witness (grid maps)");
  s->add_option("--ascii", syn_ascii, "ASCII rendering of the witness (grid maps)");

  Common chk;
  std::string chk_witness, chk_cex;
  auto* c = app.add_subcommand("check", "check a witness against the objective");
  add_model_spec(c, chk);
  add_budgets(c, chk);
  c->add_option("-w,--witness", chk_witness, "witness JSON")->required()->check(CLI::ExistingFile);
  c->add_option("--counterexample", chk_cex, "write a violating assignment as JSON");

  Common hor;
  auto* h = app.add_subcommand("horizon", "print the horizon of each path variable");
  add_model_spec(h, hor);

  Common enc;
  std::string enc_out;
  auto* e = app.add_subcommand("encode", "export the synthesis problem as solver text");
  add_model_spec(e, enc);
  e->add_option("--dialect", enc.dialect, "cnf-dimacs or smtlib2")->check(CLI::IsMember({"cnf-dimacs", "smtlib2"}));
  e->add_option("-o,--out", enc_out, "output path; the variable map goes to <out>.map.json")->required();

  Common ren;
  std::string ren_witness, ren_svg, ren_ascii;
  auto* r = app.add_subcommand("render", "draw witness paths on a grid map");
  r->add_option("-m,--model", ren.model, "grid map file")->required()->check(CLI::ExistingFile);
  r->add_option("-w,--witness", ren_witness, "witness JSON; omitted for the bare map")->check(CLI::ExistingFile);
  r->add_option("--svg", ren_svg, "SVG output path");
  r->add_option("--ascii", ren_ascii, "ASCII output path (default: stdout)");

  std::string suite, bench_csv;
  int jobs = 1;
  auto* b = app.add_subcommand("bench", "run a benchmark suite");
  b->add_option("suite", suite, "suite JSON")->required()->check(CLI::ExistingFile);
  b->add_option("--jobs", jobs, "cells run in parallel")->check(CLI::PositiveNumber);
  b->add_option("--csv", bench_csv, "CSV output path");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& err) {
    const int code = app.exit(err);
    return code == 0 ? 0 : kUsage;
  }

  try {
    if (*s) {
      const Loaded l = load(syn);
      const Outcome o = synthesize(l.problem);
      std::cerr << to_string(o.status);
      if (o.realizable()) std::cerr << " (" << to_string(o.verified) << ")";
      if (!o.reason.empty()) std::cerr << ": " << o.reason;
      std::cerr << ", " << o.iterations << " iterations\n";
      if (o.realizable()) {
        write_or_print(syn_out, witness_json(l.dts, o.witness, o.verified));
        render_paths(l, o.witness, syn_svg, syn_ascii);
      }
      return exit_of(o.status);
    }
    if (*c) {
      const Loaded l = load(chk);
      const Witness w = parse_witness(l.dts, read_file(chk_witness));
      const CheckResult res = check_witness(l.problem, w, l.problem.options.check_budget);
      std::cout << (res.holds ? "pass" : "fail") << " (" << to_string(res.verified) << ")\n";
      if (res.counterexample) {
        const std::string text = witness_json(l.dts, *res.counterexample, std::nullopt);
        if (chk_cex.empty()) std::cout << text;
        else write_file(chk_cex, text);
      }
      return res.holds ? kPass : kFail;
    }
    if (*h) {
      const Loaded l = load(hor);
      std::size_t width = 0;
      for (const auto& q : l.problem.formula.prefix) width = std::max(width, q.var.size());
      for (const auto& q : l.problem.formula.prefix) {
        const HorizonValue v = l.problem.horizons.at(q.var);
        std::cout << q.var << std::string(width - q.var.size() + 2, ' ') << v << "\n";
      }
      for (const auto& q : l.problem.formula.prefix)
        std::cout << "H(" << q.var << ")=" << l.problem.horizons.at(q.var) << "\n";
      return kPass;
    }
    if (*e) {
      const Loaded l = load(enc);
      const Dialect d = enc.dialect == "cnf-dimacs" ? Dialect::CnfDimacs : Dialect::SmtLib2;
      const QuantifiedEncoding q = encode_problem(l.problem);
      write_file(enc_out, to_solver_text(l.problem, q, d));
      write_file(enc_out + ".map.json", sidecar_json(l.problem, q, d));
      return kPass;
    }
    if (*r) {
      Loaded l;
      l.dts = load_model(read_file(ren.model), &l.grid);
      Witness w;
      if (!ren_witness.empty()) w = parse_witness(l.dts, read_file(ren_witness));
      render_paths(l, w, ren_svg, ren_svg.empty() && ren_ascii.empty() ? "-" : ren_ascii);
      return kPass;
    }
    if (*b) {
      const auto cells = parse_suite(read_file(suite), std::filesystem::path(suite).parent_path().string());
      const BenchReport rep = bench(cells, jobs);
      std::cout << rep.text();
      if (!bench_csv.empty()) write_file(bench_csv, rep.csv());
      return kPass;
    }
  } catch (const Error& err) {
    std::cerr << "error: " << err.what() << "\n";
    return kUsage;
  } catch (const std::exception& err) {
    std::cerr << "error: " << err.what() << "\n";
    return kUsage;
  }
  return kUsage;
}
