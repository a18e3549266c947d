#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "ucl/ltl.hpp"
#include "ucl/props.hpp"

namespace ucl {

/// Partition of the atomic propositions by the process that outputs them.
struct Architecture {
  PropSet env;
  PropSet ctrl;
  PropSet plant;
  bool ctrl_mutex = false;

  /// All propositions.
  PropSet all() const { return env.unite(ctrl).unite(plant); }
  /// Throws OverlappingPartition if a proposition appears in two roles.
  void validate() const;
  /// Admissible controller valuations (bits over `ctrl`), ascending.
  std::vector<Valuation> ctrl_valuations() const;
  bool admissible(Valuation ctrl_valuation) const;

  friend bool operator==(const Architecture&, const Architecture&) = default;
};

struct SpecDecl {
  std::string name;
  Architecture arch;
  ltl::Formula formula;
};

SpecDecl parse_spec(std::string_view text);
std::string serialize_spec(const SpecDecl& spec);

/// Single-line architecture rendering used inside .upc files:
/// "arch env {..} ctrl {..} plant {..} [mutex]".
std::string format_arch_line(const Architecture& arch);
Architecture parse_arch_line(std::string_view line, std::size_t line_number);

}  // namespace ucl
