#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "hyperplan/error.hpp"
#include "hyperplan/io.hpp"
#include "hyperplan/semantics.hpp"
#include "support.hpp"

using namespace hyperplan;

namespace {

CoreFormula core(const std::string& text) { return desugar(parse(text), {{"L", "R"}, {"o"}, false}); }

Trace tr(std::vector<LabelSet> steps) { return steps; }

Dts rooms() { return parse_dts(read_file(oracle::data("rooms.dts"))); }

Problem rooms_problem(const std::string& spec_file) {
  const Dts m = rooms();
  return load_problem(m, parse_spec(read_file(oracle::data(spec_file))));
}

Witness solid(const Dts& m) { return {{"p1", {*m.state_index("s0"), {*m.action_index("U"), *m.action_index("R")}}}}; }

}  // namespace

TEST_CASE("atoms read the first entry and clamp past the end") {
  const CoreFormula f = core("exists p. a@p");
  CHECK(evaluate(f, {{"p", tr({{"a"}, {}})}}));
  CHECK_FALSE(evaluate(f, {{"p", tr({{}, {"a"}})}}));
  CHECK(evaluate(f, {{"p", tr({{}, {"a"}})}}, 1));
  CHECK(evaluate(f, {{"p", tr({{}, {"a"}})}}, 9));
  CHECK(evaluate(core("exists p. G[<=5] g@p"), {{"p", tr({{"g"}})}}));
}

TEST_CASE("cross-path until") {
  const Assignment v{{"p1", tr({{"a1"}, {"a1"}, {"a1"}, {}})}, {"p2", tr({{}, {}, {"a2"}, {}})}};
  CHECK(evaluate(core("exists p1. exists p2. a1@p1 U a2@p2"), v));
  CHECK(evaluate(core("exists p1. exists p2. a1@p1 U[<=2] a2@p2"), v));
  CHECK_FALSE(evaluate(core("exists p1. exists p2. a1@p1 U[<=1] a2@p2"), v));
}

TEST_CASE("unbounded until on stuttering traces") {
  const Assignment v{{"p", tr({{"a"}, {"a"}})}};
  CHECK_FALSE(evaluate(core("exists p. a@p U b@p"), v));
  CHECK(evaluate(core("exists p. G a@p"), v));
  CHECK(evaluate(core("exists p. F b@p"), {{"p", tr({{}, {}, {}, {"b"}})}}));
}

TEST_CASE("missing path variables") {
  try {
    evaluate(core("exists p. exists q. a@p & b@q"), {{"p", tr({{"a"}})}});
    FAIL("accepted");
  } catch (const Error& e) {
    CHECK(e.code() == Errc::MissingPathVar);
  }
}

TEST_CASE("negation duality and the shift law") {
  std::mt19937_64 rng(17);
  const std::vector<std::string> pool{"p", "q", "a0", "eps", "s0"};
  for (int i = 0; i < 300; ++i) {
    const Dts m = oracle::random_dts(rng, 2, 1);
    Formula f{{{Quant::Exists, "p1"}, {Quant::Exists, "p2"}}, oracle::random_body(rng, m, {"p1", "p2"}, 3)};
    const DesugarOptions o{{"a0"}, {"p", "q"}, false};
    const Assignment v{{"p1", oracle::random_trace(rng, pool, 4)}, {"p2", oracle::random_trace(rng, pool, 4)}};
    const CoreFormula c = desugar(f, o);
    Formula nf = f;
    nf.body = neg(f.body);
    Formula xf = f;
    xf.body = next(f.body);
    const CoreFormula nc = desugar(nf, o), xc = desugar(xf, o);
    for (int t = 0; t < 5; ++t) {
      CHECK(evaluate(nc, v, t) == !evaluate(c, v, t));
      CHECK(evaluate(xc, v, t) == evaluate(c, v, t + 1));
    }
  }
}

TEST_CASE("finite traces agree with their last-entry extensions") {
  std::mt19937_64 rng(23);
  const std::vector<std::string> pool{"p", "q", "a0", "a1", "eps"};
  for (int i = 0; i < 1000; ++i) {
    const Dts m = oracle::random_dts(rng, 2, 2);
    Formula f{{{Quant::Exists, "p1"}, {Quant::ForAll, "p2"}}, oracle::random_body(rng, m, {"p1", "p2"}, 3)};
    const CoreFormula c = desugar(f, {{"a0", "a1"}, {"p", "q"}, false});
    const HorizonMap h = horizons(c);
    Assignment v, ext;
    for (const char* pv : {"p1", "p2"}) {
      v[pv] = oracle::random_trace(rng, pool, 4);
      ext[pv] = v[pv];
      const std::size_t want = static_cast<std::size_t>(h.at(pv).steps()) + 1 + std::uniform_int_distribution<std::size_t>(0, 3)(rng);
      while (ext[pv].size() < want) ext[pv].push_back(ext[pv].back());
    }
    CHECK(evaluate(c, v) == evaluate(c, ext));
  }
}

TEST_CASE("the evaluator handles rebinding") {
  const CoreFormula c = core("exists p. forall q. F[<=2] (a@p & X b@q)");
  Evaluator ev(c);
  ev.bind(0, tr({{}, {"a"}}));
  ev.bind(1, tr({{}, {}, {"b"}}));
  CHECK(ev.root());
  ev.bind(1, tr({{"b"}, {}}));
  CHECK_FALSE(ev.root());
  ev.unbind(1);
  CHECK_THROWS_AS(ev.root(), Error);
}

TEST_CASE("strategy enumeration matches an independent enumeration") {
  std::mt19937_64 rng(29);
  for (int i = 0; i < 100; ++i) {
    const Dts m = oracle::random_dts(rng, 5, 3, 0.6);
    for (int steps = 0; steps <= 3; ++steps) {
      const auto want = oracle::all_strategies(m, steps);
      const auto got = valid_strategies(m, steps, 1'000'000);
      REQUIRE(got);
      CHECK(*got == want);
      CHECK(count_valid_strategies(m, steps) == want.size());
      if (want.size() > 1) CHECK_FALSE(valid_strategies(m, steps, want.size() - 1));
    }
  }
}

TEST_CASE("rooms: the solid-line strategy is not initial-state opaque") {
  const Problem p = rooms_problem("rooms-iso.json");
  const CheckResult r = check_witness(p, solid(p.dts), 1'000'000);
  CHECK_FALSE(r.holds);
  CHECK(r.verified == Verification::Exhaustive);
}

TEST_CASE("rooms: the solid-line strategy is current-state opaque") {
  const Problem p = rooms_problem("rooms-cso.json");
  CHECK(check_witness(p, solid(p.dts), 1'000'000).holds);
}

TEST_CASE("witness checks on existential-only problems agree with evaluate") {
  std::mt19937_64 rng(31);
  for (int i = 0; i < 100; ++i) {
    const Dts m = oracle::random_dts(rng, 4, 2, 1.0);
    Formula f{{{Quant::Exists, "p1"}}, oracle::random_body(rng, m, {"p1"}, 3)};
    const CoreFormula c = desugar(f, {m.actions(), {"p", "q"}, false});
    const Problem p = make_problem(m, c);
    const auto all = oracle::all_strategies(m, p.steps(0));
    const Strategy s = all[std::uniform_int_distribution<std::size_t>(0, all.size() - 1)(rng)];
    CHECK(check_witness(p, {{"p1", s}}, 1'000'000).holds == evaluate(c, {{"p1", correspond(m, s)}}));
  }
}

TEST_CASE("universal counterexamples are reported and verified") {
  const Dts m = rooms();
  const Problem p = make_problem(m, desugar(parse("exists p1. forall p2. F[<=2] goal@p2"), {m.actions(), {}, false}));
  const CheckResult r = check_witness(p, {{"p1", {0, {}}}}, 1'000'000);
  CHECK_FALSE(r.holds);
  REQUIRE(r.counterexample);
  const Strategy& cex = r.counterexample->at("p2");
  CHECK_FALSE(evaluate(p.formula, {{"p1", correspond(m, {0, {}})}, {"p2", correspond(m, cex)}}));
}

TEST_CASE("results do not depend on the number of workers") {
  std::mt19937_64 rng(37);
  for (int i = 0; i < 40; ++i) {
    const Dts m = oracle::random_dts(rng, 5, 3, 0.8);
    Formula f{{{Quant::Exists, "p1"}, {Quant::ForAll, "p2"}}, oracle::random_body(rng, m, {"p1", "p2"}, 3)};
    Problem p = make_problem(m, desugar(f, {m.actions(), {"p", "q"}, false}));
    const auto all = oracle::all_strategies(m, p.steps(0));
    if (all.empty()) continue;
    const Witness w{{"p1", all.front()}};
    p.options.workers = 1;
    const CheckResult a = check_witness(p, w, 1'000'000);
    p.options.workers = 4;
    const CheckResult b = check_witness(p, w, 1'000'000);
    CHECK(a.holds == b.holds);
    CHECK(a.counterexample == b.counterexample);
  }
}

TEST_CASE("sampled checks are labelled") {
  const Dts m = load_model(read_file(oracle::root("maps/grid10.txt")));
  const Problem p = make_problem(m, desugar(parse("exists p1. forall p2. G[<=6] !crash@p1 & F[<=6] (r0c0@p2 | !r0c0@p2)"), {m.actions(), {}, false}));
  const int start = *m.state_index("r6c6");
  const CheckResult r = check_witness(p, {{"p1", {start, {0, 1, 0, 1, 0, 1}}}}, 1000);
  CHECK(r.holds);
  CHECK(r.verified == Verification::Sampled);
}

TEST_CASE("witness errors") {
  const Problem p = rooms_problem("rooms-cso.json");
  try {
    check_witness(p, {{"p1", {0, {*p.dts.action_index("L")}}}}, 1000);
    FAIL("accepted");
  } catch (const Error& e) {
    CHECK(e.code() == Errc::WitnessPathUndefined);
  }
  const Problem sp = rooms_problem("rooms-sp.json");
  try {
    check_witness(sp, {{"p1", {0, {}}}}, 1000);  // p1 is universally quantified here
    FAIL("accepted");
  } catch (const Error& e) {
    CHECK(e.code() == Errc::PrefixUnsupported);
  }
}
