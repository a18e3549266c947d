#include <doctest.h>

#include "support/oracle_suites.hpp"

using namespace testgen;

TEST_CASE("game solver matches backward induction on random games") {
  CHECK(game_mismatches(11, 200, 50) == 0);
}

TEST_CASE("game oracle agrees on hand-built games") {
  ucl::SafetyGame g;
  g.num_nodes = 3;
  g.num_alpha = 2;
  g.branching = 1;
  g.alphas = {0, 1};
  g.plant_states = 3;
  g.safe = {1, 1, 0};
  // node 0: a0 -> 0, a1 -> 2; node 1: both -> 2; node 2: unsafe self loop
  g.succ = {0, 2, 2, 2, 2, 2};
  const auto w = ucl::solve(g);
  const auto o = oracle::solve_game(g);
  CHECK(w.win == std::vector<char>{1, 0, 0});
  CHECK(w.winning == std::vector<std::uint64_t>{1, 0, 0});
  CHECK(o.win == w.win);
  CHECK(o.winning == w.winning);
}

TEST_CASE("CTL model checker matches the unrolling evaluator") {
  CHECK(ctl_mismatches(23, 200, 20, 6) == 0);
}

TEST_CASE("safety translation matches the bad-prefix oracle") {
  std::vector<std::string> failing;
  CHECK(ltl_mismatches(37, 100, 5, &failing) == 0);
  for (const auto& f : failing) MESSAGE("mismatch: " << f);
}

TEST_CASE("bad-prefix oracle on fixed formulas") {
  CHECK(ltl_case("G(!p)", 5).mismatches == 0);
  CHECK(ltl_case("G(p -> X q)", 5).mismatches == 0);
  CHECK(ltl_case("G p & G !p", 3).mismatches == 0);
  CHECK(ltl_case("X false", 3).mismatches == 0);
  CHECK(ltl_case("p W q", 5).mismatches == 0);
  CHECK(ltl_case("p R q", 5).mismatches == 0);
}
