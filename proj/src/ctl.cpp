#include "ucl/ctl.hpp"

#include <set>

#include "formula_lexer.hpp"
#include "ucl/spec.hpp"

namespace ucl::ctl {

namespace {

Formula make(Op op, std::string atom, Formula lhs, Formula rhs) {
  auto n = std::make_shared<Node>();
  n->op = op;
  n->atom = std::move(atom);
  n->lhs = std::move(lhs);
  n->rhs = std::move(rhs);
  return n;
}

class Parser {
 public:
  Parser(std::vector<detail::Lexeme> toks, const PropSet& allowed) : in_(std::move(toks)), allowed_(allowed) {}

  Formula parse() {
    Formula f = implication();
    if (in_.at_word("U") || in_.at_word("W") || in_.at_word("R")) {
      throw UnquantifiedTemporal(in_.peek().text, in_.peek().pos);
    }
    if (!in_.at(detail::Tok::End)) throw SyntaxError(in_.peek().pos, "trailing input");
    return f;
  }

 private:
  Formula implication() {
    Formula lhs = disjunction();
    if (in_.at(detail::Tok::Implies)) {
      in_.next();
      return binary(Op::Implies, lhs, implication());
    }
    return lhs;
  }

  Formula disjunction() {
    Formula lhs = conjunction();
    while (in_.at(detail::Tok::Or)) {
      in_.next();
      lhs = binary(Op::Or, lhs, conjunction());
    }
    return lhs;
  }

  Formula conjunction() {
    Formula lhs = prefix();
    while (in_.at(detail::Tok::And)) {
      in_.next();
      lhs = binary(Op::And, lhs, prefix());
    }
    return lhs;
  }

  static bool unary_keyword(std::string_view w, Op& op) {
    static const std::pair<const char*, Op> table[] = {{"AX", Op::AX}, {"EX", Op::EX}, {"AF", Op::AF},
                                                       {"EF", Op::EF}, {"AG", Op::AG}, {"EG", Op::EG}};
    for (const auto& [name, o] : table) {
      if (w == name) {
        op = o;
        return true;
      }
    }
    return false;
  }

  Formula prefix() {
    const detail::Lexeme& t = in_.peek();
    if (t.kind == detail::Tok::Not) {
      in_.next();
      return unary(Op::Not, prefix());
    }
    if (t.kind != detail::Tok::Ident) return primary();
    Op op = Op::True;
    if (unary_keyword(t.text, op)) {
      in_.next();
      return unary(op, prefix());
    }
    if (t.text == "X" || t.text == "F" || t.text == "G" || t.text == "U") {
      throw UnquantifiedTemporal(t.text, t.pos);
    }
    if (t.text == "A" || t.text == "E") {
      const bool universal = t.text == "A";
      const detail::Lexeme& nxt = in_.peek(1);
      if (nxt.kind == detail::Tok::LBracket) {
        in_.next();
        in_.next();
        Formula lhs = implication();
        if (!in_.at_word("U")) {
          if (in_.at_word("W") || in_.at_word("R")) {
            throw SyntaxError(in_.peek().pos, "only U is supported inside path quantifiers");
          }
          throw SyntaxError(in_.peek().pos, "expected 'U'");
        }
        in_.next();
        Formula rhs = implication();
        in_.expect(detail::Tok::RBracket, "']'");
        return binary(universal ? Op::AU : Op::EU, lhs, rhs);
      }
      if (nxt.kind == detail::Tok::Ident && (nxt.text == "X" || nxt.text == "F" || nxt.text == "G")) {
        std::string word = t.text + nxt.text;
        in_.next();
        in_.next();
        unary_keyword(word, op);
        return unary(op, prefix());
      }
      throw SyntaxError(t.pos, "path quantifier '" + t.text + "' must be followed by X, F, G or [.. U ..]");
    }
    return primary();
  }

  Formula primary() {
    detail::Lexeme t = in_.next();
    switch (t.kind) {
      case detail::Tok::LParen: {
        Formula f = implication();
        if (in_.at_word("U")) throw UnquantifiedTemporal("U", in_.peek().pos);
        in_.expect(detail::Tok::RParen, "')'");
        return f;
      }
      case detail::Tok::LBracket: throw UnquantifiedTemporal("U", t.pos);
      case detail::Tok::Ident:
        if (t.text == "true") return make_true();
        if (t.text == "false") return make_false();
        if (!allowed_.contains(t.text)) throw UnknownAtom(t.text, t.pos);
        return atom(t.text);
      case detail::Tok::End: throw SyntaxError(t.pos, "unexpected end of formula");
      default: throw SyntaxError(t.pos, "expected an operand");
    }
  }

  detail::LexemeStream in_;
  const PropSet& allowed_;
};

bool needs_parens(const Formula& f) { return f->op == Op::And || f->op == Op::Or || f->op == Op::Implies; }

void print(const Formula& f, std::string& out) {
  auto sub = [&](const Formula& c) {
    if (needs_parens(c)) {
      out += '(';
      print(c, out);
      out += ')';
    } else {
      print(c, out);
    }
  };
  switch (f->op) {
    case Op::True: out += "true"; return;
    case Op::False: out += "false"; return;
    case Op::Atom: out += f->atom; return;
    case Op::Not:
      out += '!';
      sub(f->lhs);
      return;
    case Op::And:
    case Op::Or:
    case Op::Implies:
      sub(f->lhs);
      out += f->op == Op::And ? " & " : f->op == Op::Or ? " | " : " -> ";
      sub(f->rhs);
      return;
    case Op::AU:
    case Op::EU:
      out += f->op == Op::AU ? "A[" : "E[";
      sub(f->lhs);
      out += " U ";
      sub(f->rhs);
      out += ']';
      return;
    default:
      out += op_name(f->op);
      if (!needs_parens(f->lhs)) out += ' ';
      sub(f->lhs);
      return;
  }
}

void collect_atoms(const Formula& f, std::set<std::string>& out) {
  if (!f) return;
  if (f->op == Op::Atom) out.insert(f->atom);
  collect_atoms(f->lhs, out);
  collect_atoms(f->rhs, out);
}

}  // namespace

bool is_unary(Op op) {
  switch (op) {
    case Op::Not:
    case Op::AX:
    case Op::EX:
    case Op::AF:
    case Op::EF:
    case Op::AG:
    case Op::EG: return true;
    default: return false;
  }
}

bool is_binary(Op op) {
  return op == Op::And || op == Op::Or || op == Op::Implies || op == Op::AU || op == Op::EU;
}

const char* op_name(Op op) {
  switch (op) {
    case Op::True: return "true";
    case Op::False: return "false";
    case Op::Atom: return "atom";
    case Op::Not: return "!";
    case Op::And: return "&";
    case Op::Or: return "|";
    case Op::Implies: return "->";
    case Op::AX: return "AX";
    case Op::EX: return "EX";
    case Op::AF: return "AF";
    case Op::EF: return "EF";
    case Op::AG: return "AG";
    case Op::EG: return "EG";
    case Op::AU: return "AU";
    case Op::EU: return "EU";
  }
  return "?";
}

Formula make_true() {
  static const Formula t = make(Op::True, "", nullptr, nullptr);
  return t;
}

Formula make_false() {
  static const Formula f = make(Op::False, "", nullptr, nullptr);
  return f;
}

Formula atom(std::string name) { return make(Op::Atom, std::move(name), nullptr, nullptr); }
Formula unary(Op op, Formula f) { return make(op, "", std::move(f), nullptr); }
Formula binary(Op op, Formula a, Formula b) { return make(op, "", std::move(a), std::move(b)); }

int compare(const Formula& a, const Formula& b) {
  if (a.get() == b.get()) return 0;
  if (!a) return -1;
  if (!b) return 1;
  if (a->op != b->op) return a->op < b->op ? -1 : 1;
  if (int c = a->atom.compare(b->atom); c != 0) return c < 0 ? -1 : 1;
  if (int c = compare(a->lhs, b->lhs); c != 0) return c;
  return compare(a->rhs, b->rhs);
}

std::size_t size(const Formula& f) {
  if (!f) return 0;
  return 1 + size(f->lhs) + size(f->rhs);
}

std::vector<std::string> atoms(const Formula& f) {
  std::set<std::string> s;
  collect_atoms(f, s);
  return {s.begin(), s.end()};
}

bool is_propositional(const Formula& f) {
  if (!f) return true;
  switch (f->op) {
    case Op::True:
    case Op::False:
    case Op::Atom:
    case Op::Not:
    case Op::And:
    case Op::Or:
    case Op::Implies: return is_propositional(f->lhs) && is_propositional(f->rhs);
    default: return false;
  }
}

Formula canonicalize(const Formula& f) {
  switch (f->op) {
    case Op::True:
    case Op::False:
    case Op::Atom: return f;
    case Op::And:
    case Op::Or: {
      Formula a = canonicalize(f->lhs);
      Formula b = canonicalize(f->rhs);
      if (compare(b, a) < 0) std::swap(a, b);
      return binary(f->op, a, b);
    }
    case Op::AU:
    case Op::EU: {
      Formula a = canonicalize(f->lhs);
      Formula b = canonicalize(f->rhs);
      if (a->op == Op::True) return unary(f->op == Op::AU ? Op::AF : Op::EF, b);
      return binary(f->op, a, b);
    }
    case Op::Implies: return binary(Op::Implies, canonicalize(f->lhs), canonicalize(f->rhs));
    default: return unary(f->op, canonicalize(f->lhs));
  }
}

Formula parse_ctl(std::string_view text, const PropSet& allowed, SourcePos origin) {
  return canonicalize(Parser(detail::lex_formula(text, origin), allowed).parse());
}

Formula parse_ctl(std::string_view text, const Architecture& arch, SourcePos origin) {
  return parse_ctl(text, arch.all(), origin);
}

std::string to_string(const Formula& f) {
  std::string out;
  print(f, out);
  return out;
}

}  // namespace ucl::ctl
