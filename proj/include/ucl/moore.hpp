#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "ucl/props.hpp"
#include "ucl/text.hpp"

namespace ucl {

enum class Role { Plant, Controller, Environment };

const char* role_name(Role r);

/// Upper bound on machine input width; transition tables are dense in 2^inputs.
inline constexpr std::size_t kMaxInputs = 16;

/// Total deterministic Moore machine. Labels are valuations over `outputs`,
/// transition guards are valuations over `inputs`.
class MooreMachine {
 public:
  std::string name = "m";
  Role role = Role::Plant;
  PropSet inputs;
  PropSet outputs;
  std::vector<std::string> state_names;
  std::size_t initial = 0;
  std::vector<std::uint32_t> tau;  // [s * input_count() + v]
  std::vector<Valuation> label;

  std::size_t num_states() const noexcept { return label.size(); }
  std::size_t input_count() const noexcept { return inputs.valuation_count(); }
  std::size_t next(std::size_t s, Valuation v) const { return tau[s * input_count() + v]; }
  std::size_t state_index(std::string_view name) const;  // throws UnknownState

  /// Checks table shapes, totality and label ranges; throws InternalError.
  void check() const;
};

MooreMachine parse_plant(std::string_view input);
/// Reads a machine block starting at lines[pos] ("plant|controller|environment <name>").
MooreMachine parse_machine_block(const std::vector<text::Line>& lines, std::size_t& pos);
std::string serialize_plant(const MooreMachine& m);

/// Reachable product m1 || m2. Throws OutputOverlap when outputs intersect.
MooreMachine parallel_compose(const MooreMachine& m1, const MooreMachine& m2);

/// Same machine reading `inputs` (a superset of m.inputs); the extra bits are ignored.
/// Formulas over the original propositions keep their truth on the widened Kripke view.
MooreMachine widen_inputs(const MooreMachine& m, const PropSet& inputs);

/// States reachable from `from`, in BFS order over ascending input valuations.
std::vector<std::size_t> bfs_order(const MooreMachine& m, std::size_t from);

}  // namespace ucl
