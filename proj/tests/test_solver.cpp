#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <filesystem>

#include "hyperplan/encoder.hpp"
#include "hyperplan/error.hpp"
#include "hyperplan/io.hpp"
#include "hyperplan/semantics.hpp"
#include "hyperplan/solver.hpp"
#include "support.hpp"

using namespace hyperplan;

namespace {

const std::vector<std::vector<Quant>> kPrefixes = {
    {Quant::Exists}, {Quant::ForAll}, {Quant::Exists, Quant::Exists}, {Quant::Exists, Quant::ForAll},
    {Quant::ForAll, Quant::ForAll}};

struct Instance {
  Formula surface;
  Problem problem;
};

Instance random_instance(std::mt19937_64& rng, const std::vector<Quant>& kinds) {
  for (;;) {
    const Dts m = oracle::random_dts(rng, 4, 2, 0.7);
    std::vector<std::string> vars;
    Formula f;
    for (std::size_t i = 0; i < kinds.size(); ++i) {
      vars.push_back("p" + std::to_string(i + 1));
      f.prefix.push_back({kinds[i], vars.back()});
    }
    f.body = oracle::random_body(rng, m, vars, 3);
    Problem p = make_problem(m, desugar(f, {m.actions(), {"p", "q"}, false}));
    bool small = true;
    for (int i = 0; i < p.num_paths(); ++i) small = small && p.steps(i) <= 3;
    if (small) return {f, p};
  }
}

bool oracle_truth(const Instance& in) {
  std::vector<int> steps;
  for (int i = 0; i < in.problem.num_paths(); ++i) steps.push_back(in.problem.steps(i));
  return oracle::brute_force(in.surface, in.problem.dts, steps, {"p", "q"});
}

Problem rooms(const std::string& spec) {
  const Dts m = parse_dts(read_file(oracle::data("rooms.dts")));
  return load_problem(m, parse_spec(read_file(oracle::data(spec))));
}

}  // namespace

TEST_CASE("enumeration and CEGIS agree with the brute-force oracle") {
  std::mt19937_64 rng(67);
  for (int i = 0; i < 150; ++i) {
    const Instance in = random_instance(rng, kPrefixes[static_cast<std::size_t>(i) % kPrefixes.size()]);
    const bool want = oracle_truth(in);
    const Outcome e = solve_enumeration(in.problem, 10'000'000);
    const Outcome c = solve_cegis(in.problem, 10'000);
    REQUIRE(e.status != Outcome::Status::Unknown);
    REQUIRE(c.status != Outcome::Status::Unknown);
    CHECK_MESSAGE(e.realizable() == want, to_string(in.surface));
    CHECK_MESSAGE(c.realizable() == want, to_string(in.surface));
    if (c.realizable()) CHECK(check_witness(in.problem, c.witness, 10'000'000).holds);
    if (e.realizable()) CHECK(check_witness(in.problem, e.witness, 10'000'000).holds);
  }
}

TEST_CASE("enumeration handles alternating prefixes that CEGIS rejects") {
  std::mt19937_64 rng(71);
  for (int i = 0; i < 40; ++i) {
    const Instance in = random_instance(rng, {Quant::ForAll, Quant::Exists});
    CHECK(solve_enumeration(in.problem, 10'000'000).realizable() == oracle_truth(in));
    CHECK_THROWS_AS(solve_cegis(in.problem, 100), Error);
    CHECK(synthesize(in.problem).realizable() == oracle_truth(in));
  }
}

TEST_CASE("budgets and iteration limits produce unknown outcomes") {
  const Problem sp = rooms("rooms-sp.json");
  const Outcome e = solve_enumeration(sp, 5);
  CHECK(e.status == Outcome::Status::Unknown);
  CHECK_FALSE(e.reason.empty());
  const Outcome c = solve_cegis(sp, 0);
  CHECK(c.status == Outcome::Status::Unknown);
  CHECK(c.reason == "iteration limit reached");
}

TEST_CASE("strict shortest path on the rooms") {
  const Problem sp = rooms("rooms-sp.json");
  for (const Backend b : {Backend::Cegis, Backend::Enumeration}) {
    Problem p = sp;
    p.options.backend = b;
    const Outcome o = synthesize(p);
    REQUIRE(o.realizable());
    const auto states = *run(p.dts, o.witness.at("p2"));
    const auto first = std::find_if(states.begin(), states.end(), [&](int s) { return p.dts.labels(s).count("goal"); });
    CHECK(first - states.begin() == 2);
  }
}

TEST_CASE("partial transition functions constrain both sides") {
  // from s0 only L is defined; the universal path must not be able to dodge the goal
  Dts m({"s0", "s1", "s2"}, {"L", "R"});
  m.add_transition("s0", "L", "s1");
  m.add_transition("s1", "L", "s2");
  m.add_transition("s1", "R", "s0");
  m.add_label("s2", "goal");
  const DesugarOptions o{m.actions(), {}, false};
  const Problem p = make_problem(m, desugar(parse("exists p1. forall p2. s0@p1 & ((s0@p2 & G[<=2] act(p1)=act(p2)) -> F[<=2] goal@p2)"), o));
  const Outcome c = solve_cegis(p, 1000);
  REQUIRE(c.realizable());
  CHECK(c.witness.at("p1") == Strategy{0, {0, 0}});
  CHECK(solve_enumeration(p, 1'000'000).realizable());
}

TEST_CASE("fixed existential paths") {
  const Problem cso = rooms("rooms-cso.json");
  const Dts& m = cso.dts;
  const Witness solid{{"p1", {*m.state_index("s0"), {*m.action_index("U"), *m.action_index("R")}}}};
  const Outcome o = solve_cegis_fixed(cso, solid, 1000);
  REQUIRE(o.realizable());
  CHECK_FALSE(o.witness.count("p1"));
  const Strategy dotted = o.witness.at("p2");
  CHECK(evaluate(cso.formula, {{"p1", correspond(m, solid.at("p1"))}, {"p2", correspond(m, dotted)}}));
}

TEST_CASE("external backend without a command exports and reports unknown") {
  Problem p = rooms("rooms-iso.json");
  const auto dir = std::filesystem::temp_directory_path() / "hyperplan-test-ext";
  std::filesystem::create_directories(dir);
  p.options.backend = Backend::External;
  p.options.dialect = Dialect::CnfDimacs;
  p.options.export_path = (dir / "iso.cnf").string();
  p.options.solver_cmd = "";
  unsetenv("HYPERPLAN_SOLVER_CMD");
  const Outcome o = synthesize(p);
  CHECK(o.status == Outcome::Status::Unknown);
  CHECK(o.reason == "exported to " + p.options.export_path);
  CHECK(std::filesystem::exists(p.options.export_path + ".map.json"));
}

TEST_CASE("external backend reads verdicts and DIMACS models") {
  Problem p = rooms("rooms-iso.json");
  const auto dir = std::filesystem::temp_directory_path() / "hyperplan-test-ext";
  std::filesystem::create_directories(dir);
  p.options.backend = Backend::External;
  p.options.dialect = Dialect::CnfDimacs;
  p.options.export_path = (dir / "iso.cnf").string();

  // a stand-in solver that prints a model computed here
  const QuantifiedEncoding e = encode_problem(p);
  const SatResult r = sat_solve(e.matrix);
  REQUIRE(r.status == SatStatus::Sat);
  std::string reply = "c stand-in\ns SATISFIABLE\nv";
  for (int v = 1; v <= e.matrix.vars; ++v) reply += " " + std::to_string(r.model[static_cast<std::size_t>(v)] ? v : -v);
  reply += " 0\n";
  write_file((dir / "reply.txt").string(), reply);
  p.options.solver_cmd = "cat " + (dir / "reply.txt").string() + " #";
  const Outcome o = synthesize(p);
  REQUIRE(o.realizable());
  CHECK(check_witness(p, o.witness, 1'000'000).holds);

  write_file((dir / "unsat.txt").string(), "s UNSATISFIABLE\n");
  p.options.solver_cmd = "cat " + (dir / "unsat.txt").string() + " #";
  CHECK(synthesize(p).status == Outcome::Status::Unrealizable);
}

TEST_CASE("external backend reads SMT-LIB models") {
  Problem p = rooms("rooms-iso.json");
  const auto dir = std::filesystem::temp_directory_path() / "hyperplan-test-ext";
  std::filesystem::create_directories(dir);
  p.options.backend = Backend::External;
  p.options.dialect = Dialect::SmtLib2;
  p.options.export_path = (dir / "iso.smt2").string();
  write_file((dir / "smt.txt").string(),
             "sat\n(\n  (define-fun p1__s0 () State st_s0)\n  (define-fun p1__s1 () State st_s1)\n"
             "  (define-fun p1__s2 () State st_s4)\n  (define-fun p1__a0 () Action ac_R)\n"
             "  (define-fun p1__a1 () Action ac_U)\n  (define-fun p2__s0 () State st_s1)\n"
             "  (define-fun p2__s1 () State st_s2)\n  (define-fun p2__s2 () State st_s5)\n"
             "  (define-fun p2__a0 () Action ac_R)\n  (define-fun p2__a1 () Action ac_U)\n)\n");
  p.options.solver_cmd = "cat " + (dir / "smt.txt").string() + " #";
  const Outcome o = synthesize(p);
  REQUIRE(o.realizable());
  CHECK(o.witness.at("p1") == Strategy{0, {1, 2}});
  CHECK(o.witness.at("p2") == Strategy{1, {1, 2}});
}
