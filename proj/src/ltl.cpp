#include "ucl/ltl.hpp"

#include <algorithm>
#include <set>

#include "formula_lexer.hpp"
#include "ucl/spec.hpp"

namespace ucl::ltl {

namespace {

Formula make(Op op, std::string atom, std::vector<Formula> args, SourcePos pos) {
  auto n = std::make_shared<Node>();
  n->op = op;
  n->atom = std::move(atom);
  n->args = std::move(args);
  n->pos = pos;
  return n;
}

const char* op_text(Op op) {
  switch (op) {
    case Op::Not: return "!";
    case Op::And: return "&";
    case Op::Or: return "|";
    case Op::Implies: return "->";
    case Op::Next: return "X";
    case Op::Globally: return "G";
    case Op::Finally: return "F";
    case Op::Until: return "U";
    case Op::WeakUntil: return "W";
    case Op::Release: return "R";
    default: return "?";
  }
}

bool is_keyword(std::string_view w) {
  return w == "X" || w == "G" || w == "F" || w == "U" || w == "W" || w == "R" || w == "true" ||
         w == "false";
}

class Parser {
 public:
  explicit Parser(std::vector<detail::Lexeme> toks) : in_(std::move(toks)) {}

  Formula parse() {
    Formula f = implication();
    if (!in_.at(detail::Tok::End)) throw SyntaxError(in_.peek().pos, "trailing input");
    return f;
  }

 private:
  Formula implication() {
    Formula lhs = disjunction();
    if (in_.at(detail::Tok::Implies)) {
      SourcePos p = in_.next().pos;
      return binary(Op::Implies, lhs, implication(), p);
    }
    return lhs;
  }

  Formula disjunction() {
    Formula lhs = conjunction();
    while (in_.at(detail::Tok::Or)) {
      SourcePos p = in_.next().pos;
      lhs = binary(Op::Or, lhs, conjunction(), p);
    }
    return lhs;
  }

  Formula conjunction() {
    Formula lhs = temporal();
    while (in_.at(detail::Tok::And)) {
      SourcePos p = in_.next().pos;
      lhs = binary(Op::And, lhs, temporal(), p);
    }
    return lhs;
  }

  Formula temporal() {
    Formula lhs = prefix();
    Op op;
    if (in_.at_word("U")) {
      op = Op::Until;
    } else if (in_.at_word("W")) {
      op = Op::WeakUntil;
    } else if (in_.at_word("R")) {
      op = Op::Release;
    } else {
      return lhs;
    }
    SourcePos p = in_.next().pos;
    return binary(op, lhs, temporal(), p);
  }

  Formula prefix() {
    const auto& t = in_.peek();
    if (t.kind == detail::Tok::Not) {
      SourcePos p = in_.next().pos;
      return unary(Op::Not, prefix(), p);
    }
    if (t.kind == detail::Tok::Ident) {
      Op op;
      if (t.text == "X") {
        op = Op::Next;
      } else if (t.text == "G") {
        op = Op::Globally;
      } else if (t.text == "F") {
        op = Op::Finally;
      } else {
        return primary();
      }
      SourcePos p = in_.next().pos;
      return unary(op, prefix(), p);
    }
    return primary();
  }

  Formula primary() {
    detail::Lexeme t = in_.next();
    switch (t.kind) {
      case detail::Tok::LParen: {
        Formula f = implication();
        in_.expect(detail::Tok::RParen, "')'");
        return f;
      }
      case detail::Tok::Ident:
        if (t.text == "true") return make(Op::True, "", {}, t.pos);
        if (t.text == "false") return make(Op::False, "", {}, t.pos);
        if (is_keyword(t.text)) throw SyntaxError(t.pos, "operator '" + t.text + "' used as operand");
        return atom(t.text, t.pos);
      case detail::Tok::End: throw SyntaxError(t.pos, "unexpected end of formula");
      default: throw SyntaxError(t.pos, "expected an operand");
    }
  }

  detail::LexemeStream in_;
};

Formula nnf(const Formula& f, bool negated) {
  switch (f->op) {
    case Op::True: return negated ? make_false() : f;
    case Op::False: return negated ? make_true() : f;
    case Op::Atom: return negated ? unary(Op::Not, f, f->pos) : f;
    case Op::Not: return nnf(f->args[0], !negated);
    case Op::And:
    case Op::Or: {
      std::vector<Formula> parts;
      for (const auto& a : f->args) parts.push_back(nnf(a, negated));
      Op op = (f->op == Op::And) != negated ? Op::And : Op::Or;
      return nary(op, std::move(parts));
    }
    case Op::Implies: {
      // a -> b == !a | b
      auto a = nnf(f->args[0], !negated);
      auto b = nnf(f->args[1], negated);
      return nary(negated ? Op::And : Op::Or, {a, b});
    }
    case Op::Next: return unary(Op::Next, nnf(f->args[0], negated), f->pos);
    case Op::Globally:
      if (negated) throw NotSafety("F", f->pos);
      return unary(Op::Globally, nnf(f->args[0], false), f->pos);
    case Op::Finally:
      if (!negated) throw NotSafety("F", f->pos);
      return unary(Op::Globally, nnf(f->args[0], true), f->pos);
    case Op::Until:
      if (!negated) throw NotSafety("U", f->pos);
      // !(a U b) == !a R !b
      return binary(Op::Release, nnf(f->args[0], true), nnf(f->args[1], true), f->pos);
    case Op::WeakUntil:
      // !(a W b) == !b U (!a & !b)
      if (negated) throw NotSafety("U", f->pos);
      return binary(Op::WeakUntil, nnf(f->args[0], false), nnf(f->args[1], false), f->pos);
    case Op::Release:
      // !(a R b) == !a U !b
      if (negated) throw NotSafety("U", f->pos);
      return binary(Op::Release, nnf(f->args[0], false), nnf(f->args[1], false), f->pos);
  }
  return f;
}

bool needs_parens(const Formula& f) {
  switch (f->op) {
    case Op::And:
    case Op::Or:
    case Op::Implies:
    case Op::Until:
    case Op::WeakUntil:
    case Op::Release: return true;
    default: return false;
  }
}

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
    case Op::True: out += "true"; break;
    case Op::False: out += "false"; break;
    case Op::Atom: out += f->atom; break;
    case Op::Not:
      out += '!';
      sub(f->args[0]);
      break;
    case Op::Next:
    case Op::Globally:
    case Op::Finally:
      out += op_text(f->op);
      if (!needs_parens(f->args[0])) out += ' ';
      sub(f->args[0]);
      break;
    case Op::And:
    case Op::Or:
    case Op::Implies:
    case Op::Until:
    case Op::WeakUntil:
    case Op::Release:
      for (std::size_t i = 0; i < f->args.size(); ++i) {
        if (i > 0) {
          out += ' ';
          out += op_text(f->op);
          out += ' ';
        }
        sub(f->args[i]);
      }
      break;
  }
}

void collect_atoms(const Formula& f, std::set<std::string>& out) {
  if (f->op == Op::Atom) out.insert(f->atom);
  for (const auto& a : f->args) collect_atoms(a, out);
}

}  // namespace

Formula make_true() {
  static const Formula t = make(Op::True, "", {}, {});
  return t;
}

Formula make_false() {
  static const Formula f = make(Op::False, "", {}, {});
  return f;
}

Formula atom(std::string name, SourcePos pos) { return make(Op::Atom, std::move(name), {}, pos); }

Formula unary(Op op, Formula f, SourcePos pos) { return make(op, "", {std::move(f)}, pos); }

Formula binary(Op op, Formula a, Formula b, SourcePos pos) {
  return make(op, "", {std::move(a), std::move(b)}, pos);
}

Formula nary(Op op, std::vector<Formula> args) { return make(op, "", std::move(args), {}); }

int compare(const Formula& a, const Formula& b) {
  if (a.get() == b.get()) return 0;
  if (a->op != b->op) return a->op < b->op ? -1 : 1;
  if (int c = a->atom.compare(b->atom); c != 0) return c < 0 ? -1 : 1;
  std::size_t n = std::min(a->args.size(), b->args.size());
  for (std::size_t i = 0; i < n; ++i) {
    if (int c = compare(a->args[i], b->args[i]); c != 0) return c;
  }
  if (a->args.size() != b->args.size()) return a->args.size() < b->args.size() ? -1 : 1;
  return 0;
}

Formula parse_raw(std::string_view text, SourcePos origin) {
  return Parser(detail::lex_formula(text, origin)).parse();
}

Formula to_nnf(const Formula& f) { return canonicalize(nnf(f, false)); }

Formula canonicalize(const Formula& f) {
  switch (f->op) {
    case Op::True:
    case Op::False:
    case Op::Atom: return f;
    case Op::Not: {
      Formula c = canonicalize(f->args[0]);
      if (c->op == Op::True) return make_false();
      if (c->op == Op::False) return make_true();
      if (c->op == Op::Not) return c->args[0];
      return unary(Op::Not, c, f->pos);
    }
    case Op::And:
    case Op::Or: {
      const bool conj = f->op == Op::And;
      const Op unit = conj ? Op::True : Op::False;
      const Op zero = conj ? Op::False : Op::True;
      std::vector<Formula> flat;
      for (const auto& a : f->args) {
        Formula c = canonicalize(a);
        if (c->op == zero) return conj ? make_false() : make_true();
        if (c->op == unit) continue;
        if (c->op == f->op) {
          flat.insert(flat.end(), c->args.begin(), c->args.end());
        } else {
          flat.push_back(c);
        }
      }
      std::sort(flat.begin(), flat.end(), Less{});
      flat.erase(std::unique(flat.begin(), flat.end(), [](const Formula& x, const Formula& y) { return equal(x, y); }),
                 flat.end());
      if (flat.empty()) return conj ? make_true() : make_false();
      if (flat.size() == 1) return flat.front();
      return nary(f->op, std::move(flat));
    }
    default: {
      std::vector<Formula> args;
      args.reserve(f->args.size());
      for (const auto& a : f->args) args.push_back(canonicalize(a));
      auto is = [&](std::size_t i, Op op) { return args[i]->op == op; };
      switch (f->op) {
        case Op::Next:
          if (is(0, Op::True)) return make_true();
          break;
        case Op::Globally:
          if (is(0, Op::True) || is(0, Op::False) || is(0, Op::Globally)) return args[0];
          break;
        case Op::WeakUntil:
          if (is(0, Op::True) || is(1, Op::True)) return make_true();
          if (is(0, Op::False)) return args[1];
          if (is(1, Op::False)) return canonicalize(unary(Op::Globally, args[0], f->pos));
          break;
        case Op::Release:
          if (is(1, Op::True) || is(1, Op::False)) return args[1];
          if (is(0, Op::True)) return args[1];
          if (is(0, Op::False)) return canonicalize(unary(Op::Globally, args[1], f->pos));
          break;
        default: break;
      }
      return make(f->op, f->atom, std::move(args), f->pos);
    }
  }
}

Formula parse_ltl(std::string_view text, const Architecture& arch, SourcePos origin) {
  Formula raw = parse_raw(text, origin);
  const PropSet ap = arch.all();
  std::vector<const Node*> stack{raw.get()};
  while (!stack.empty()) {
    const Node* n = stack.back();
    stack.pop_back();
    if (n->op == Op::Atom && !ap.contains(n->atom)) throw UnknownAtom(n->atom, n->pos);
    for (const auto& a : n->args) stack.push_back(a.get());
  }
  return to_nnf(raw);
}

std::string to_string(const Formula& f) {
  std::string out;
  print(f, out);
  return out;
}

std::size_t size(const Formula& f) {
  std::size_t n = 1;
  for (const auto& a : f->args) n += size(a);
  return n;
}

std::size_t next_depth(const Formula& f) {
  std::size_t d = 0;
  for (const auto& a : f->args) d = std::max(d, next_depth(a));
  return f->op == Op::Next ? d + 1 : d;
}

std::vector<std::string> atoms(const Formula& f) {
  std::set<std::string> s;
  collect_atoms(f, s);
  return {s.begin(), s.end()};
}

}  // namespace ucl::ltl
