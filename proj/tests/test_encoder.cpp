#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <sstream>

#include "hyperplan/encoder.hpp"
#include "hyperplan/error.hpp"
#include "hyperplan/io.hpp"
#include "hyperplan/semantics.hpp"
#include "support.hpp"

using namespace hyperplan;

namespace {

// all solutions projected onto `vars`
std::set<std::vector<bool>> projected_models(SatSolver& s, const std::vector<int>& vars) {
  std::set<std::vector<bool>> out;
  while (s.solve() == SatStatus::Sat) {
    std::vector<bool> m;
    std::vector<int> block;
    for (int v : vars) {
      m.push_back(s.value(v));
      block.push_back(s.value(v) ? -v : v);
    }
    out.insert(m);
    s.add_clause(block);
  }
  return out;
}

// truth of the encoded matrix under the characteristic valuation of the strategies
bool encoded_truth(const Problem& p, const std::vector<Strategy>& strategies) {
  const QuantifiedEncoding e = encode_problem(p);
  SatSolver s;
  for (int v = 0; v < e.matrix.vars; ++v) s.new_var();
  for (const auto& c : e.matrix.clauses) s.add_clause(c);
  std::vector<int> as;
  for (std::size_t i = 0; i < strategies.size(); ++i) {
    const auto& b = e.atlas.entries[i].block;
    const auto states = *run(p.dts, strategies[i]);
    for (std::size_t t = 0; t < b.x.size(); ++t)
      for (std::size_t k = 0; k < b.x[t].size(); ++k) as.push_back(states[t] == static_cast<int>(k) ? b.x[t][k] : -b.x[t][k]);
    for (std::size_t t = 0; t < b.y.size(); ++t)
      for (std::size_t k = 0; k < b.y[t].size(); ++k)
        as.push_back(strategies[i].actions[t] == static_cast<int>(k) ? b.y[t][k] : -b.y[t][k]);
  }
  return s.solve(as) == SatStatus::Sat;
}

Problem random_problem(std::mt19937_64& rng, int max_states, int max_actions) {
  for (;;) {
    const Dts m = oracle::random_dts(rng, max_states, max_actions, 0.8);
    Formula f{{{Quant::Exists, "p1"}, {Quant::ForAll, "p2"}}, oracle::random_body(rng, m, {"p1", "p2"}, 3)};
    Problem p = make_problem(m, desugar(f, {m.actions(), {"p", "q"}, false}));
    if (p.steps(0) <= 3 && p.steps(1) <= 3) return p;
  }
}

}  // namespace

TEST_CASE("exactly-one groups admit exactly the one-hot assignments") {
  for (int n = 1; n <= 10; ++n) {
    SatSolver s;
    std::vector<int> g;
    for (int i = 0; i < n; ++i) g.push_back(s.new_var());
    exactly_one(s, g);
    const auto models = projected_models(s, g);
    CHECK(models.size() == static_cast<std::size_t>(n));
    for (const auto& m : models) CHECK(std::count(m.begin(), m.end(), true) == 1);
  }
}

TEST_CASE("path constraints have one model per valid strategy") {
  std::mt19937_64 rng(53);
  for (int i = 0; i < 60; ++i) {
    const Dts m = oracle::random_dts(rng, 8, 3, 0.6);
    const int steps = std::uniform_int_distribution<int>(0, 3)(rng);
    SatSolver s;
    const PathBlock b = encode_path_constraint(s, m, steps);
    std::vector<int> vars;
    for (const auto& g : b.x) vars.insert(vars.end(), g.begin(), g.end());
    for (const auto& g : b.y) vars.insert(vars.end(), g.begin(), g.end());
    SatSolver copy;
    const PathBlock b2 = encode_path_constraint(copy, m, steps);
    std::set<Strategy, bool (*)(const Strategy&, const Strategy&)> decoded(
        [](const Strategy& a, const Strategy& c) { return std::tie(a.init, a.actions) < std::tie(c.init, c.actions); });
    while (copy.solve() == SatStatus::Sat) {
      decoded.insert(decode(b2, copy.model()));
      std::vector<int> block;
      for (const auto& g : b2.x)
        for (int v : g) block.push_back(copy.value(v) ? -v : v);
      for (const auto& g : b2.y)
        for (int v : g) block.push_back(copy.value(v) ? -v : v);
      copy.add_clause(block);
    }
    const auto want = oracle::all_strategies(m, steps);
    CHECK(projected_models(s, vars).size() == want.size());
    CHECK(decoded.size() == want.size());
    for (const auto& w : want) CHECK(decoded.count(w));
  }
}

TEST_CASE("gates fold constants and share structure") {
  Cnf c;
  GateBuilder g(c);
  const int a = c.new_var(), b = c.new_var();
  CHECK(g.land(a, g.top()) == a);
  CHECK(g.land(a, g.bottom()) == g.bottom());
  CHECK(g.lor(a, g.top()) == g.top());
  CHECK(g.land(a, -a) == g.bottom());
  CHECK(g.lor(a, -a) == g.top());
  CHECK(g.land(a, b) == g.land(b, a));
  CHECK(g.land({a, b, a}) == g.land(a, b));
  CHECK(g.gates().size() == 1);
}

TEST_CASE("the matrix agrees with evaluate on random problems and assignments") {
  std::mt19937_64 rng(59);
  int checked = 0;
  for (int i = 0; i < 150; ++i) {
    const Problem p = random_problem(rng, 4, 3);
    const auto d1 = oracle::all_strategies(p.dts, p.steps(0));
    const auto d2 = oracle::all_strategies(p.dts, p.steps(1));
    if (d1.empty() || d2.empty()) continue;
    const Strategy s1 = d1[std::uniform_int_distribution<std::size_t>(0, d1.size() - 1)(rng)];
    const Strategy s2 = d2[std::uniform_int_distribution<std::size_t>(0, d2.size() - 1)(rng)];
    const bool want = evaluate(p.formula, {{"p1", correspond(p.dts, s1)}, {"p2", correspond(p.dts, s2)}});
    CHECK_MESSAGE(encoded_truth(p, {s1, s2}) == want, to_string(p.formula));
    ++checked;
  }
  CHECK(checked > 100);
}

TEST_CASE("linked paths follow their link where choices coincide") {
  std::mt19937_64 rng(61);
  for (int i = 0; i < 100; ++i) {
    const Dts m = oracle::random_dts(rng, 4, 2, 0.8);
    const int steps = 3;
    const auto all = oracle::all_strategies(m, steps);
    if (all.empty()) continue;
    const Strategy base = all[std::uniform_int_distribution<std::size_t>(0, all.size() - 1)(rng)];
    // a constant strategy mixing copied and fixed choices; it may be invalid
    Strategy mix{std::uniform_int_distribution<int>(0, m.num_states() - 1)(rng), {}};
    SatSolver s;
    GateBuilder g(s);
    SymbolicPath sym(encode_path_constraint(s, m, steps));
    std::bernoulli_distribution copy(0.5);
    LinkedPath::Choice init{mix.init, nullptr};
    if (copy(rng)) {
      init.link = &sym;
      mix.init = base.init;
    }
    std::vector<LinkedPath::Choice> acts;
    for (int t = 0; t < steps; ++t) {
      int a = std::uniform_int_distribution<int>(0, m.num_actions() - 1)(rng);
      SymbolicPath* link = nullptr;
      if (copy(rng)) {
        link = &sym;
        a = base.actions[static_cast<std::size_t>(t)];
      }
      mix.actions.push_back(a);
      acts.push_back({a, link});
    }
    LinkedPath lp(m, g, init, acts);
    std::vector<int> as;
    const auto states = *run(m, base);
    for (int t = 0; t <= steps; ++t)
      for (int k = 0; k < m.num_states(); ++k) as.push_back(states[static_cast<std::size_t>(t)] == k ? sym.state(t, k) : -sym.state(t, k));
    for (int t = 0; t < steps; ++t)
      for (int k = 0; k < m.num_actions(); ++k)
        as.push_back(base.actions[static_cast<std::size_t>(t)] == k ? sym.action(t, k) : -sym.action(t, k));
    std::vector<int> probes;
    for (int t = 0; t <= steps; ++t)
      for (int k = 0; k < m.num_states(); ++k) probes.push_back(lp.state(t, k));
    const int valid = lp.valid();
    REQUIRE(s.solve(as) == SatStatus::Sat);
    const auto path = run(m, mix);
    CHECK(s.lit_true(valid) == path.has_value());
    if (path)
      for (int t = 0; t <= steps; ++t)
        for (int k = 0; k < m.num_states(); ++k)
          CHECK(s.lit_true(probes[static_cast<std::size_t>(t * m.num_states() + k)]) == ((*path)[static_cast<std::size_t>(t)] == k));
  }
}

TEST_CASE("unknown atoms are rejected") {
  const Dts m = parse_dts(read_file(oracle::data("rooms.dts")));
  try {
    encode_problem(make_problem(m, desugar(parse("exists p. F[<=2] nowhere@p"), {m.actions(), {}, false})));
    FAIL("accepted");
  } catch (const Error& e) {
    CHECK(e.code() == Errc::UnknownAtom);
  }
}

TEST_CASE("DIMACS output is deterministic and existential-only") {
  const Dts m = parse_dts(read_file(oracle::data("rooms.dts")));
  const Problem iso = load_problem(m, parse_spec(read_file(oracle::data("rooms-iso.json"))));
  const std::string a = to_solver_text(iso, encode_problem(iso), Dialect::CnfDimacs);
  const std::string b = to_solver_text(iso, encode_problem(iso), Dialect::CnfDimacs);
  CHECK(a == b);
  CHECK(a.rfind("p cnf ", 0) == 0);
  const Problem sp = load_problem(m, parse_spec(read_file(oracle::data("rooms-sp.json"))));
  try {
    to_solver_text(sp, encode_problem(sp), Dialect::CnfDimacs);
    FAIL("accepted");
  } catch (const Error& e) {
    CHECK(e.code() == Errc::AlternationUnsupported);
  }
}

TEST_CASE("DIMACS clauses are satisfiable exactly when the problem is realizable") {
  const Dts m = parse_dts(read_file(oracle::data("rooms.dts")));
  const Problem iso = load_problem(m, parse_spec(read_file(oracle::data("rooms-iso.json"))));
  const std::string text = to_solver_text(iso, encode_problem(iso), Dialect::CnfDimacs);
  std::istringstream in(text);
  std::string p, cnf;
  Cnf c;
  std::size_t n = 0;
  in >> p >> cnf >> c.vars >> n;
  std::vector<int> cl;
  for (int lit; in >> lit;) {
    if (lit == 0) {
      c.clauses.push_back(cl);
      cl.clear();
    } else {
      cl.push_back(lit);
    }
  }
  CHECK(c.clauses.size() == n);
  CHECK(sat_solve(c).status == SatStatus::Sat);
}

TEST_CASE("SMT-LIB output matches the golden file") {
  const Dts m = parse_dts(read_file(oracle::data("rooms.dts")));
  const Problem sp = load_problem(m, parse_spec(read_file(oracle::data("rooms-sp.json"))));
  const QuantifiedEncoding e = encode_problem(sp);
  CHECK(to_solver_text(sp, e, Dialect::SmtLib2) == read_file(oracle::root("tests/golden/rooms-sp.smt2")));
  CHECK(sidecar_json(sp, e, Dialect::SmtLib2) == read_file(oracle::root("tests/golden/rooms-sp.smt2.map.json")));
}

TEST_CASE("SMT-LIB output declares the existential block and nests the universal one") {
  const Dts m = parse_dts(read_file(oracle::data("rooms.dts")));
  const Problem sp = load_problem(m, parse_spec(read_file(oracle::data("rooms-sp.json"))));
  const std::string text = to_solver_text(sp, encode_problem(sp), Dialect::SmtLib2);
  CHECK(text.find("(declare-datatypes ((State 0)) (((st_s0) (st_s1)") != std::string::npos);
  CHECK(text.find("(declare-const p2__s0 State)") != std::string::npos);
  CHECK(text.find("(declare-const p2__a3 Action)") != std::string::npos);
  CHECK(text.find("(declare-const p1__s0") == std::string::npos);
  CHECK(text.find("(forall ((p1__s0 State)") != std::string::npos);
  CHECK(text.find("(check-sat)") != std::string::npos);
}
