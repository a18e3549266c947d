#include "formula_lexer.hpp"

#include <cctype>

namespace ucl::detail {

std::vector<Lexeme> lex_formula(std::string_view text, SourcePos origin) {
  std::vector<Lexeme> out;
  auto at = [&](std::size_t i) { return SourcePos{origin.line, origin.column + i}; };
  std::size_t i = 0;
  while (i < text.size()) {
    unsigned char c = static_cast<unsigned char>(text[i]);
    if (std::isspace(c)) {
      ++i;
      continue;
    }
    Lexeme l;
    l.pos = at(i);
    if (std::isalpha(c) || c == '_') {
      std::size_t j = i;
      while (j < text.size() && (std::isalnum(static_cast<unsigned char>(text[j])) || text[j] == '_')) ++j;
      l.kind = Tok::Ident;
      l.text = std::string(text.substr(i, j - i));
      i = j;
    } else if (c == '(') {
      l.kind = Tok::LParen, ++i;
    } else if (c == ')') {
      l.kind = Tok::RParen, ++i;
    } else if (c == '[') {
      l.kind = Tok::LBracket, ++i;
    } else if (c == ']') {
      l.kind = Tok::RBracket, ++i;
    } else if (c == '!' || c == '~') {
      l.kind = Tok::Not, ++i;
    } else if (c == '&') {
      l.kind = Tok::And;
      i += (i + 1 < text.size() && text[i + 1] == '&') ? 2 : 1;
    } else if (c == '|') {
      l.kind = Tok::Or;
      i += (i + 1 < text.size() && text[i + 1] == '|') ? 2 : 1;
    } else if ((c == '-' || c == '=') && i + 1 < text.size() && text[i + 1] == '>') {
      l.kind = Tok::Implies;
      i += 2;
    } else {
      throw SyntaxError(at(i), std::string("unexpected character '") + static_cast<char>(c) + "'");
    }
    out.push_back(std::move(l));
  }
  Lexeme end;
  end.kind = Tok::End;
  end.pos = at(text.size());
  out.push_back(end);
  return out;
}

}  // namespace ucl::detail
