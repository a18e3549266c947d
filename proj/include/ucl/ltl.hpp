#pragma once

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

namespace ucl::ltl {

enum class Op : std::uint8_t {
  True,
  False,
  Atom,
  Not,
  And,
  Or,
  Implies,
  Next,
  Globally,
  Finally,
  Until,
  WeakUntil,
  Release
};

struct Node;
using Formula = std::shared_ptr<const Node>;

/// Immutable LTL syntax tree. And/Or are n-ary once canonicalized.
struct Node {
  Op op = Op::True;
  std::string atom;
  std::vector<Formula> args;
  SourcePos pos;  // where the operator appeared in the source; not part of equality
};

Formula make_true();
Formula make_false();
Formula atom(std::string name, SourcePos pos = {});
Formula unary(Op op, Formula f, SourcePos pos = {});
Formula binary(Op op, Formula a, Formula b, SourcePos pos = {});
Formula nary(Op op, std::vector<Formula> args);

/// Structural total order (positions ignored).
int compare(const Formula& a, const Formula& b);
inline bool equal(const Formula& a, const Formula& b) { return compare(a, b) == 0; }
struct Less {
  bool operator()(const Formula& a, const Formula& b) const { return compare(a, b) < 0; }
};

/// Grammar-level parse; no safety or atom checks.
/// `origin` shifts reported positions when the text is embedded in a file.
Formula parse_raw(std::string_view text, SourcePos origin = {1, 1});

/// Negation normal form with implications eliminated.
/// Throws NotSafety when F or strong U would remain.
Formula to_nnf(const Formula& f);

/// Flattened, sorted, duplicate-free And/Or with boolean unit laws applied.
Formula canonicalize(const Formula& f);

/// Canonical safety NNF over the architecture's propositions.
Formula parse_ltl(std::string_view text, const Architecture& arch, SourcePos origin = {1, 1});

std::string to_string(const Formula& f);

std::size_t size(const Formula& f);
/// Maximal nesting depth of X.
std::size_t next_depth(const Formula& f);
std::vector<std::string> atoms(const Formula& f);

}  // namespace ucl::ltl
