#pragma once

#include <cstdint>
#include <memory>
#include <string>
#include <utility>
#include <vector>

#include "ucl/automaton.hpp"
#include "ucl/learner.hpp"
#include "ucl/moore.hpp"
#include "ucl/prophecy.hpp"
#include "ucl/spec.hpp"

namespace ucl {

struct CompositionResult {
  /// Total controller over inputs env + plant outputs, outputs ctrl. Dead nodes keep the first
  /// admissible output and self-loop, so the machine is usable but not consistent there.
  MooreMachine controller;
  /// Explored (q, s) pairs, one per controller state.
  std::vector<std::pair<std::uint32_t, std::uint32_t>> nodes;
  /// (q, s) pairs where no output's prophecy held.
  std::vector<std::pair<std::uint32_t, std::uint32_t>> incompatible;

  bool compatible() const noexcept { return incompatible.empty(); }
};

/// On-the-fly composition: BFS from (q0, s0); each node takes the first admissible output
/// (ascending) whose prophecy holds at the current sub-plant.
CompositionResult compose(const ProphecyController& u, const MooreMachine& m);

struct VerifyResult {
  bool ok = true;
  /// Shortest letter sequence (over the automaton's props) ending in an unsafe state.
  std::vector<Valuation> counterexample;
};

VerifyResult verify(const SafetyAutomaton& a, const MooreMachine& ctrl, const MooreMachine& m);

/// One "{..}" letter per line.
std::string format_trace(const PropSet& props, const std::vector<Valuation>& trace);

struct SynthesisResult {
  MooreMachine controller;
  ProphecyController prophecies;
  int refinements = 0;
};

/// Compose and verify; on failure refine w with m, re-learn and compose once more.
/// Throws Unrealizable when the refined initial node is losing.
SynthesisResult synthesize(Approximation& w, const ProphecyController& u, std::shared_ptr<const MooreMachine> m,
                           const LearnerParams& params = {});

/// Baseline: solve A x M and take the first winning output at every reachable node.
/// Throws Unrealizable when the initial node is losing.
MooreMachine synthesize_direct(const SafetyAutomaton& a, const MooreMachine& m, const Architecture& arch);

}  // namespace ucl
