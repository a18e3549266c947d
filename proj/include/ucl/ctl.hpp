#pragma once

#include <array>
#include <cstdint>
#include <memory>
#include <string>
#include <string_view>
#include <vector>

#include "ucl/error.hpp"
#include "ucl/props.hpp"

namespace ucl {
struct Architecture;
}

namespace ucl::ctl {

enum class Op : std::uint8_t {
  True,
  False,
  Atom,
  Not,
  And,
  Or,
  Implies,
  AX,
  EX,
  AF,
  EF,
  AG,
  EG,
  AU,
  EU
};

/// Operators in learner enumeration order.
inline constexpr std::array<Op, 12> kEnumerationOrder = {Op::Not, Op::And, Op::Or, Op::Implies,
                                                         Op::AX,  Op::EX,  Op::AF, Op::EF,
                                                         Op::AG,  Op::EG,  Op::AU, Op::EU};

bool is_unary(Op op);
bool is_binary(Op op);
const char* op_name(Op op);

struct Node;
using Formula = std::shared_ptr<const Node>;

struct Node {
  Op op = Op::True;
  std::string atom;
  Formula lhs;  // sole operand of unary operators
  Formula rhs;
};

Formula make_true();
Formula make_false();
Formula atom(std::string name);
Formula unary(Op op, Formula f);
Formula binary(Op op, Formula a, Formula b);

int compare(const Formula& a, const Formula& b);
inline bool equal(const Formula& a, const Formula& b) { return compare(a, b) == 0; }

/// Number of syntax-tree nodes; atoms, constants and implications count 1.
std::size_t size(const Formula& f);
std::vector<std::string> atoms(const Formula& f);
bool is_propositional(const Formula& f);

/// Sorts operands of & and |, rewrites A[true U g] to AF g and E[true U g] to EF g.
Formula canonicalize(const Formula& f);

/// Parses "AX f", "A[f U g]", ... and canonicalizes. Atoms must be in `allowed`.
Formula parse_ctl(std::string_view text, const PropSet& allowed, SourcePos origin = {1, 1});
Formula parse_ctl(std::string_view text, const Architecture& arch, SourcePos origin = {1, 1});

std::string to_string(const Formula& f);

}  // namespace ucl::ctl
