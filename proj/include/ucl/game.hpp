#pragma once

#include <atomic>
#include <cstdint>
#include <vector>

#include "ucl/automaton.hpp"
#include "ucl/moore.hpp"
#include "ucl/spec.hpp"

namespace ucl {

/// Turn-based safety game. Node n, controller choice a and environment choice b
/// lead to succ[(n * num_alpha + a) * branching + b].
struct SafetyGame {
  std::size_t num_nodes = 0;
  std::size_t num_alpha = 0;
  std::size_t branching = 1;
  std::vector<std::uint32_t> succ;
  std::vector<char> safe;

  // Product metadata when built from A x M: node = q * plant_states + s.
  std::size_t plant_states = 0;
  std::vector<Valuation> alphas;  // controller valuations (over arch.ctrl) per choice index

  std::uint32_t successor(std::size_t n, std::size_t a, std::size_t b) const {
    return succ[(n * num_alpha + a) * branching + b];
  }
  std::size_t node(std::size_t q, std::size_t s) const { return q * plant_states + s; }
};

struct WinningRegion {
  std::vector<char> win;
  /// Per node, bit a set iff choice a keeps every successor in win.
  std::vector<std::uint64_t> winning;
};

/// Game over all |Q| x |S| pairs. Throws AlphabetMismatch when the plant or automaton
/// disagree with the architecture.
SafetyGame build_game(const SafetyAutomaton& a, const MooreMachine& m, const Architecture& arch);

WinningRegion solve(const SafetyGame& g);

/// Winning controller valuations at (q, s), ascending. Throws UnknownNode.
std::vector<Valuation> winning_outputs_at(const WinningRegion& w, const SafetyGame& g, std::size_t q,
                                          std::size_t s);

/// Number of solve() calls in this process; lets callers assert that no game was solved.
std::uint64_t game_solve_count();

}  // namespace ucl
