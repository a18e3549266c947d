#pragma once

// Backward induction for safety games: W_0 = safe, W_{i+1} = safe nodes with
// a choice whose every successor is in W_i, iterated exactly |nodes| times.

#include <cstdint>
#include <vector>

#include "ucl/game.hpp"

namespace oracle {

struct GameVerdict {
  std::vector<char> win;
  std::vector<std::uint64_t> winning;
};

inline GameVerdict solve_game(const ucl::SafetyGame& g) {
  const std::size_t n = g.num_nodes;
  auto good = [&](const std::vector<char>& w, std::size_t v, std::size_t a) {
    for (std::size_t b = 0; b < g.branching; ++b) {
      if (!w[g.successor(v, a, b)]) return false;
    }
    return true;
  };
  std::vector<char> w(g.safe.begin(), g.safe.end());
  for (std::size_t round = 0; round < n; ++round) {
    std::vector<char> next(n, 0);
    for (std::size_t v = 0; v < n; ++v) {
      if (!g.safe[v]) continue;
      for (std::size_t a = 0; a < g.num_alpha && !next[v]; ++a) next[v] = good(w, v, a);
    }
    w = std::move(next);
  }
  GameVerdict r{w, std::vector<std::uint64_t>(n, 0)};
  for (std::size_t v = 0; v < n; ++v) {
    if (!w[v]) continue;
    for (std::size_t a = 0; a < g.num_alpha; ++a) {
      if (good(w, v, a)) r.winning[v] |= std::uint64_t{1} << a;
    }
  }
  return r;
}

}  // namespace oracle
