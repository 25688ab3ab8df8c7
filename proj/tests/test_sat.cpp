#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "hyperplan/sat.hpp"

using namespace hyperplan;

namespace {

Cnf random_cnf(std::mt19937_64& rng, int vars, int clauses, int width) {
  Cnf c;
  c.vars = vars;
  std::uniform_int_distribution<int> var(1, vars), w(1, width);
  std::bernoulli_distribution sign(0.5);
  for (int i = 0; i < clauses; ++i) {
    std::vector<int> cl;
    for (int k = w(rng); k > 0; --k) cl.push_back(sign(rng) ? var(rng) : -var(rng));
    c.clauses.push_back(cl);
  }
  return c;
}

bool brute_sat(const Cnf& c, const std::vector<int>& assumptions = {}) {
  for (std::uint64_t bits = 0; bits < (std::uint64_t{1} << c.vars); ++bits) {
    std::vector<bool> m(static_cast<std::size_t>(c.vars) + 1);
    for (int v = 1; v <= c.vars; ++v) m[static_cast<std::size_t>(v)] = (bits >> (v - 1)) & 1;
    bool ok = c.satisfied_by(m);
    for (int a : assumptions) ok = ok && (a > 0 ? m[static_cast<std::size_t>(a)] : !m[static_cast<std::size_t>(-a)]);
    if (ok) return true;
  }
  return false;
}

// n+1 pigeons into n holes
Cnf pigeonhole(int n) {
  Cnf c;
  auto x = [n](int p, int h) { return p * n + h + 1; };
  c.vars = (n + 1) * n;
  for (int p = 0; p <= n; ++p) {
    std::vector<int> cl;
    for (int h = 0; h < n; ++h) cl.push_back(x(p, h));
    c.clauses.push_back(cl);
  }
  for (int h = 0; h < n; ++h)
    for (int p = 0; p <= n; ++p)
      for (int q = p + 1; q <= n; ++q) c.clauses.push_back({-x(p, h), -x(q, h)});
  return c;
}

}  // namespace

TEST_CASE("trivial instances") {
  Cnf empty;
  CHECK(sat_solve(empty).status == SatStatus::Sat);
  Cnf unit;
  unit.vars = 1;
  unit.clauses = {{1}, {-1}};
  CHECK(sat_solve(unit).status == SatStatus::Unsat);
  Cnf blank;
  blank.vars = 1;
  blank.clauses = {{}};
  CHECK(sat_solve(blank).status == SatStatus::Unsat);
  Cnf taut;
  taut.vars = 2;
  taut.clauses = {{1, -1}, {2, 2}};
  const SatResult r = sat_solve(taut);
  REQUIRE(r.status == SatStatus::Sat);
  CHECK(r.model[2]);
}

TEST_CASE("agrees with truth tables on random formulas up to 20 variables") {
  std::mt19937_64 rng(41);
  int sat = 0, unsat = 0;
  for (int i = 0; i < 400; ++i) {
    const int vars = std::uniform_int_distribution<int>(1, i < 350 ? 10 : 20)(rng);
    const Cnf c = random_cnf(rng, vars, vars * 3, 3);
    const SatResult r = sat_solve(c);
    const bool want = brute_sat(c);
    REQUIRE(r.status != SatStatus::Aborted);
    CHECK((r.status == SatStatus::Sat) == want);
    if (r.status == SatStatus::Sat) CHECK(c.satisfied_by(r.model));
    (want ? sat : unsat)++;
  }
  CHECK(sat > 50);
  CHECK(unsat > 50);
}

TEST_CASE("pigeonhole instances are unsatisfiable") {
  for (int n = 2; n <= 6; ++n) CHECK(sat_solve(pigeonhole(n)).status == SatStatus::Unsat);
}

TEST_CASE("assumptions agree with truth tables and leave the solver reusable") {
  std::mt19937_64 rng(43);
  for (int i = 0; i < 100; ++i) {
    const int vars = std::uniform_int_distribution<int>(2, 12)(rng);
    const Cnf c = random_cnf(rng, vars, vars * 3, 3);
    SatSolver s;
    for (int v = 0; v < vars; ++v) s.new_var();
    for (const auto& cl : c.clauses) s.add_clause(cl);
    for (int k = 0; k < 5; ++k) {
      std::vector<int> as;
      for (int j = 0; j < 3; ++j) {
        const int v = std::uniform_int_distribution<int>(1, vars)(rng);
        as.push_back(std::bernoulli_distribution(0.5)(rng) ? v : -v);
      }
      const SatStatus st = s.solve(as);
      CHECK((st == SatStatus::Sat) == brute_sat(c, as));
      if (st == SatStatus::Sat) {
        CHECK(c.satisfied_by(s.model()));
        for (int a : as) CHECK(s.lit_true(a));
      }
    }
    CHECK((s.solve() == SatStatus::Sat) == brute_sat(c));
  }
}

TEST_CASE("incremental clause addition narrows the models") {
  SatSolver s;
  std::vector<int> v;
  for (int i = 0; i < 4; ++i) v.push_back(s.new_var());
  s.add({v[0], v[1], v[2], v[3]});
  int models = 0;
  while (s.solve() == SatStatus::Sat) {
    std::vector<int> block;
    for (int x : v) block.push_back(s.value(x) ? -x : x);
    s.add_clause(block);
    ++models;
  }
  CHECK(models == 15);
  CHECK_FALSE(s.okay());
}

TEST_CASE("conflict limits and deadlines abort") {
  SatSolver s;
  const Cnf c = pigeonhole(9);
  for (int i = 0; i < c.vars; ++i) s.new_var();
  for (const auto& cl : c.clauses) s.add_clause(cl);
  s.set_conflict_limit(10);
  CHECK(s.solve() == SatStatus::Aborted);
  SatSolver t;
  for (int i = 0; i < c.vars; ++i) t.new_var();
  for (const auto& cl : c.clauses) t.add_clause(cl);
  t.set_deadline(std::chrono::steady_clock::now());
  CHECK(t.solve() == SatStatus::Aborted);
}

TEST_CASE("normalization orders literals by variable, positive first, then clauses") {
  Cnf c;
  c.vars = 3;
  c.clauses = {{3, -1}, {2, 1, -2}, {-1, 1}};
  c.normalize();
  CHECK(c.clauses == std::vector<std::vector<int>>{{1, -1}, {1, 2, -2}, {-1, 3}});
}

TEST_CASE("solving is deterministic") {
  std::mt19937_64 rng(47);
  for (int i = 0; i < 20; ++i) {
    const Cnf c = random_cnf(rng, 40, 150, 3);
    CHECK(sat_solve(c).model == sat_solve(c).model);
  }
}
