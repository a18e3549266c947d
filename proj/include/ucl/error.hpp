#pragma once

#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <string>

namespace ucl {

/// Broad failure classes; the CLI maps them onto exit codes.
enum class ErrorClass {
  Input,        // malformed or inconsistent input files / formulas
  Unrealizable, // no controller exists, or composition is incompatible
  Resource,     // a configured cap was exceeded
  Internal      // contract violation inside the library
};

class Error : public std::runtime_error {
 public:
  Error(ErrorClass cls, const std::string& what) : std::runtime_error(what), cls_(cls) {}
  ErrorClass error_class() const noexcept { return cls_; }

 private:
  ErrorClass cls_;
};

/// Position inside a text input; line/column are 1-based, 0 means unknown.
struct SourcePos {
  std::size_t line = 0;
  std::size_t column = 0;
  std::string str() const;
};

class SyntaxError : public Error {
 public:
  SyntaxError(SourcePos pos, const std::string& msg);
  SourcePos pos() const noexcept { return pos_; }

 private:
  SourcePos pos_;
};

class UnknownAtom : public Error {
 public:
  UnknownAtom(const std::string& name, SourcePos pos = {});
  const std::string& name() const noexcept { return name_; }

 private:
  std::string name_;
};

class NotSafety : public Error {
 public:
  NotSafety(const std::string& op, SourcePos pos);
  const std::string& op() const noexcept { return op_; }
  SourcePos pos() const noexcept { return pos_; }

 private:
  std::string op_;
  SourcePos pos_;
};

class UnquantifiedTemporal : public Error {
 public:
  UnquantifiedTemporal(const std::string& op, SourcePos pos);
};

class OverlappingPartition : public Error {
 public:
  explicit OverlappingPartition(const std::string& prop);
  const std::string& prop() const noexcept { return prop_; }

 private:
  std::string prop_;
};

class StateCapExceeded : public Error {
 public:
  explicit StateCapExceeded(std::size_t cap);
};

class AlphabetMismatch : public Error {
 public:
  explicit AlphabetMismatch(const std::string& detail);
};

class NondeterministicGuard : public Error {
 public:
  NondeterministicGuard(const std::string& state, const std::string& valuation, SourcePos pos);
};

class IncompleteTransitions : public Error {
 public:
  explicit IncompleteTransitions(const std::string& state);
};

class UnknownState : public Error {
 public:
  UnknownState(const std::string& state, SourcePos pos = {});
};

class OutputOverlap : public Error {
 public:
  explicit OutputOverlap(const std::string& props);
};

class InputWidthExceeded : public Error {
 public:
  InputWidthExceeded(std::size_t width, std::size_t limit);
};

class SignatureMismatch : public Error {
 public:
  explicit SignatureMismatch(const std::string& detail);
};

class UnknownNode : public Error {
 public:
  UnknownNode(std::size_t q, std::size_t s);
};

class ConflictingSample : public Error {
 public:
  ConflictingSample(std::size_t q, const std::string& alpha, std::uint64_t fingerprint);
};

class NoSeparator : public Error {
 public:
  explicit NoSeparator(int max_size);
};

class CandidateBudgetExceeded : public Error {
 public:
  CandidateBudgetExceeded(std::size_t budget, int size);
};

class Inconsistent : public Error {
 public:
  explicit Inconsistent(const std::string& detail);
};

class Unrealizable : public Error {
 public:
  explicit Unrealizable(const std::string& plant);
};

class InternalError : public Error {
 public:
  explicit InternalError(const std::string& detail);
};

class InvalidConfig : public Error {
 public:
  explicit InvalidConfig(const std::string& detail);
};

class IoError : public Error {
 public:
  explicit IoError(const std::string& detail);
};

}  // namespace ucl
