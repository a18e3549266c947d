#pragma once

#include <string_view>

#include "ucl/ctl.hpp"
#include "ucl/kripke.hpp"

namespace ucl {

struct McResult {
  bool holds_at_root = false;
  Bitset sat;
};

/// Bottom-up CTL labeling. Throws UnknownAtom for atoms outside k.props.
McResult mc_ctl(const Kripke& k, const ctl::Formula& f);
Bitset sat_set(const Kripke& k, const ctl::Formula& f);

namespace mc {

Bitset atom(const Kripke& k, std::string_view name);
Bitset ex(const Kripke& k, const Bitset& a);
Bitset ax(const Kripke& k, const Bitset& a);
Bitset eu(const Kripke& k, const Bitset& a, const Bitset& b);
Bitset au(const Kripke& k, const Bitset& a, const Bitset& b);
Bitset eg(const Kripke& k, const Bitset& a);

/// One operator on operand satisfaction sets; `b` is ignored for unary operators.
Bitset apply(const Kripke& k, ctl::Op op, const Bitset& a, const Bitset& b);

}  // namespace mc

}  // namespace ucl
