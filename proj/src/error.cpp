#include "ucl/error.hpp"

#include <sstream>

namespace ucl {

std::string SourcePos::str() const {
  if (line == 0) return "?";
  std::ostringstream os;
  os << line << ':' << column;
  return os.str();
}

SyntaxError::SyntaxError(SourcePos pos, const std::string& msg)
    : Error(ErrorClass::Input, pos.str() + ": syntax error: " + msg), pos_(pos) {}

UnknownAtom::UnknownAtom(const std::string& name, SourcePos pos)
    : Error(ErrorClass::Input, pos.str() + ": unknown atom '" + name + "'"), name_(name) {}

NotSafety::NotSafety(const std::string& op, SourcePos pos)
    : Error(ErrorClass::Input,
            pos.str() + ": not a safety formula: operator " + op + " remains after negation normal form"),
      op_(op),
      pos_(pos) {}

UnquantifiedTemporal::UnquantifiedTemporal(const std::string& op, SourcePos pos)
    : Error(ErrorClass::Input, pos.str() + ": temporal operator " + op + " lacks a path quantifier") {}

OverlappingPartition::OverlappingPartition(const std::string& prop)
    : Error(ErrorClass::Input, "proposition '" + prop + "' is declared in two roles"), prop_(prop) {}

StateCapExceeded::StateCapExceeded(std::size_t cap)
    : Error(ErrorClass::Resource, "automaton exceeds the state cap of " + std::to_string(cap)) {}

AlphabetMismatch::AlphabetMismatch(const std::string& detail)
    : Error(ErrorClass::Input, "alphabet mismatch: " + detail) {}

NondeterministicGuard::NondeterministicGuard(const std::string& state, const std::string& valuation,
                                             SourcePos pos)
    : Error(ErrorClass::Input,
            pos.str() + ": state '" + state + "' has two transitions on " + valuation) {}

IncompleteTransitions::IncompleteTransitions(const std::string& state)
    : Error(ErrorClass::Input, "state '" + state + "' has unmatched input valuations and no default edge") {}

UnknownState::UnknownState(const std::string& state, SourcePos pos)
    : Error(ErrorClass::Input, pos.str() + ": unknown state '" + state + "'") {}

OutputOverlap::OutputOverlap(const std::string& props)
    : Error(ErrorClass::Input, "machines share output propositions: " + props) {}

InputWidthExceeded::InputWidthExceeded(std::size_t width, std::size_t limit)
    : Error(ErrorClass::Resource, "input width " + std::to_string(width) + " exceeds limit " +
                                      std::to_string(limit)) {}

SignatureMismatch::SignatureMismatch(const std::string& detail)
    : Error(ErrorClass::Input, "signature mismatch: " + detail) {}

UnknownNode::UnknownNode(std::size_t q, std::size_t s)
    : Error(ErrorClass::Input,
            "unknown game node (" + std::to_string(q) + ", " + std::to_string(s) + ")") {}

ConflictingSample::ConflictingSample(std::size_t q, const std::string& alpha, std::uint64_t fingerprint)
    : Error(ErrorClass::Internal, "conflicting sample at (q" + std::to_string(q) + ", " + alpha +
                                      "), fingerprint " + std::to_string(fingerprint)) {}

NoSeparator::NoSeparator(int max_size)
    : Error(ErrorClass::Resource, "no separating CTL formula of size <= " + std::to_string(max_size)) {}

CandidateBudgetExceeded::CandidateBudgetExceeded(std::size_t budget, int size)
    : Error(ErrorClass::Resource, "learner kept more than " + std::to_string(budget) +
                                      " distinct candidates before reaching size " + std::to_string(size)) {}

Inconsistent::Inconsistent(const std::string& detail)
    : Error(ErrorClass::Internal, "inconsistent samples: " + detail) {}

Unrealizable::Unrealizable(const std::string& plant)
    : Error(ErrorClass::Unrealizable, "no controller exists for plant '" + plant + "'") {}

InternalError::InternalError(const std::string& detail)
    : Error(ErrorClass::Internal, "internal error: " + detail) {}

InvalidConfig::InvalidConfig(const std::string& detail)
    : Error(ErrorClass::Input, "invalid configuration: " + detail) {}

IoError::IoError(const std::string& detail) : Error(ErrorClass::Input, "i/o error: " + detail) {}

}  // namespace ucl
