#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "ucl/ltl.hpp"
#include "ucl/props.hpp"
#include "ucl/text.hpp"

namespace ucl {

struct Architecture;
class MooreMachine;

/// Deterministic safety automaton over letters 2^props.
/// States are numbered in BFS order from the initial state; the unsafe sink, if any, is last.
class SafetyAutomaton {
 public:
  std::string name = "aut";
  PropSet props;
  std::vector<std::string> state_names;
  std::size_t initial = 0;
  std::vector<std::uint32_t> delta;  // [q * letter_count() + letter]
  std::vector<char> safe;
  std::vector<ltl::Formula> derivatives;  // per state when built by ltl_to_dsa, else empty

  std::size_t num_states() const noexcept { return safe.size(); }
  std::size_t letter_count() const noexcept { return props.valuation_count(); }
  std::size_t step(std::size_t q, Valuation letter) const { return delta[q * letter_count() + letter]; }
  bool is_safe(std::size_t q) const { return safe[q] != 0; }
  /// Index of the unique unsafe state, or num_states() if every state is safe.
  std::size_t sink() const;
  std::size_t state_index(std::string_view name) const;  // throws UnknownState
};

inline constexpr std::size_t kDefaultStateCap = 10000;

SafetyAutomaton ltl_to_dsa(const ltl::Formula& f, const PropSet& ap, std::size_t state_cap = kDefaultStateCap);
SafetyAutomaton ltl_to_dsa(const ltl::Formula& f, const Architecture& arch,
                           std::size_t state_cap = kDefaultStateCap);

struct Run {
  std::vector<std::size_t> states;
  bool safe = true;
};

/// Letters are valuations over a.props.
Run run_trace(const SafetyAutomaton& a, const std::vector<Valuation>& trace);

struct ProductEdge {
  Valuation letter;  // over the automaton's props
  std::uint32_t target;
};

/// Reachable part of A x M; node 0 is (q0, s0).
struct ProductGraph {
  std::vector<std::pair<std::uint32_t, std::uint32_t>> nodes;  // (automaton state, machine state)
  std::vector<std::vector<ProductEdge>> edges;
  std::vector<char> safe;
};

ProductGraph product_with_machine(const SafetyAutomaton& a, const MooreMachine& m);

std::string serialize_aut(const SafetyAutomaton& a);
SafetyAutomaton parse_aut(std::string_view input);
/// Reads an "aut" block starting at lines[pos]; advances pos past it.
SafetyAutomaton parse_aut_block(const std::vector<text::Line>& lines, std::size_t& pos);

}  // namespace ucl
