#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "ucl/error.hpp"

namespace ucl::detail {

enum class Tok { Ident, LParen, RParen, LBracket, RBracket, Not, And, Or, Implies, End };

struct Lexeme {
  Tok kind = Tok::End;
  std::string text;
  SourcePos pos;
};

/// Shared tokenizer for LTL and CTL surface syntax.
std::vector<Lexeme> lex_formula(std::string_view text, SourcePos origin);

class LexemeStream {
 public:
  explicit LexemeStream(std::vector<Lexeme> toks) : toks_(std::move(toks)) {}
  const Lexeme& peek(std::size_t ahead = 0) const {
    std::size_t i = pos_ + ahead;
    return i < toks_.size() ? toks_[i] : toks_.back();
  }
  Lexeme next() { return toks_[pos_ < toks_.size() - 1 ? pos_++ : pos_]; }
  bool at(Tok k) const { return peek().kind == k; }
  bool at_word(std::string_view w) const { return peek().kind == Tok::Ident && peek().text == w; }
  void expect(Tok k, const char* what) {
    if (!at(k)) throw SyntaxError(peek().pos, std::string("expected ") + what);
    next();
  }

 private:
  std::vector<Lexeme> toks_;
  std::size_t pos_ = 0;
};

}  // namespace ucl::detail
