#pragma once

#include <cstdint>
#include <memory>

#include "ucl/moore.hpp"

namespace ucl {

/// A plant re-rooted at one of its states, M(s).
struct PointedPlant {
  std::shared_ptr<const MooreMachine> machine;
  std::size_t point = 0;
  std::uint64_t fingerprint = 0;

  const std::string& state_name() const { return machine->state_names[point]; }
};

/// Minimal Moore machine equivalent to m(from): reachable states, partition refinement,
/// states renumbered canonically (BFS over ascending input valuations) and named c0, c1, ...
MooreMachine minimize(const MooreMachine& m, std::size_t from);

/// Renaming- and bisimulation-invariant hash of m(from).
std::uint64_t fingerprint(const MooreMachine& m, std::size_t from);

/// Fingerprint of the whole table including state names; distinguishes syntactic copies.
std::uint64_t table_fingerprint(const MooreMachine& m);

PointedPlant sub_plant(std::shared_ptr<const MooreMachine> m, std::size_t s);
PointedPlant sub_plant(std::shared_ptr<const MooreMachine> m, std::string_view state);

/// Naive greatest-fixpoint bisimulation on the two sub-machines.
/// Throws SignatureMismatch when proposition sets differ.
bool bisimilar(const PointedPlant& a, const PointedPlant& b);

}  // namespace ucl
