#include "ucl/spec.hpp"

#include <optional>

#include "ucl/text.hpp"

namespace ucl {

namespace {

std::vector<std::string> words_after(const std::vector<text::Token>& toks, std::size_t from) {
  std::vector<std::string> out;
  for (std::size_t i = from; i < toks.size(); ++i) {
    if (toks[i].kind != text::Token::Kind::Word) throw SyntaxError(toks[i].pos, "expected a proposition name");
    out.push_back(toks[i].word);
  }
  return out;
}

PropSet props_at(const std::vector<std::string>& names, SourcePos pos) {
  for (const auto& n : names) {
    if (!is_identifier(n)) throw SyntaxError(pos, "malformed proposition name '" + n + "'");
  }
  return PropSet(names);
}

std::string join(const PropSet& p) {
  std::string out;
  for (const auto& n : p.names()) {
    out += ' ';
    out += n;
  }
  return out;
}

std::string braced(const PropSet& p) { return p.format(p.full_mask()); }

}  // namespace

void Architecture::validate() const {
  for (const auto& n : env.names()) {
    if (ctrl.contains(n) || plant.contains(n)) throw OverlappingPartition(n);
  }
  for (const auto& n : ctrl.names()) {
    if (plant.contains(n)) throw OverlappingPartition(n);
  }
}

bool Architecture::admissible(Valuation v) const {
  if (v > ctrl.full_mask()) return false;
  return !ctrl_mutex || (v & (v - 1)) == 0;
}

std::vector<Valuation> Architecture::ctrl_valuations() const {
  std::vector<Valuation> out;
  for (Valuation v = 0; v < ctrl.valuation_count(); ++v) {
    if (admissible(v)) out.push_back(v);
  }
  return out;
}

SpecDecl parse_spec(std::string_view input) {
  const auto lines = text::split_lines(input);
  if (lines.empty()) throw SyntaxError({1, 1}, "empty spec");
  SpecDecl out;
  std::optional<PropSet> env, ctrl, plant;
  bool have_formula = false;
  for (std::size_t li = 0; li < lines.size(); ++li) {
    const auto& line = lines[li];
    const auto toks = text::tokenize(line);
    const auto& head = toks.front();
    if (head.kind != text::Token::Kind::Word) throw SyntaxError(head.pos, "expected a keyword");
    if (li == 0) {
      if (head.word != "spec" || toks.size() != 2 || toks[1].kind != text::Token::Kind::Word) {
        throw SyntaxError(head.pos, "expected 'spec <name>'");
      }
      out.name = toks[1].word;
      continue;
    }
    if (have_formula) throw SyntaxError(head.pos, "'formula' must be the last line");
    auto section = [&](std::optional<PropSet>& slot) {
      if (slot) throw SyntaxError(head.pos, "duplicate '" + head.word + "' line");
      slot = props_at(words_after(toks, 1), head.pos);
    };
    if (head.word == "env") {
      section(env);
    } else if (head.word == "ctrl") {
      section(ctrl);
    } else if (head.word == "plant") {
      section(plant);
    } else if (head.word == "mutex") {
      if (toks.size() != 2 || toks[1].word != "ctrl") throw SyntaxError(head.pos, "expected 'mutex ctrl'");
      out.arch.ctrl_mutex = true;
    } else if (head.word == "formula") {
      if (!ctrl || !plant) throw SyntaxError(head.pos, "'ctrl' and 'plant' must precede 'formula'");
      out.arch.env = env.value_or(PropSet{});
      out.arch.ctrl = *ctrl;
      out.arch.plant = *plant;
      out.arch.validate();
      if (out.arch.all().size() > kMaxProps) throw InputWidthExceeded(out.arch.all().size(), kMaxProps);
      std::size_t column = 0;
      std::string body = text::rest_after_words(line, 1, column);
      if (body.empty()) throw SyntaxError(head.pos, "empty formula");
      out.formula = ltl::parse_ltl(body, out.arch, {line.number, column});
      have_formula = true;
    } else {
      throw SyntaxError(head.pos, "unknown keyword '" + head.word + "'");
    }
  }
  if (!have_formula) throw SyntaxError({lines.back().number, 1}, "missing 'formula' line");
  return out;
}

std::string serialize_spec(const SpecDecl& spec) {
  std::string out = "spec " + spec.name + "\n";
  out += "env" + join(spec.arch.env) + "\n";
  out += "ctrl" + join(spec.arch.ctrl) + "\n";
  out += "plant" + join(spec.arch.plant) + "\n";
  if (spec.arch.ctrl_mutex) out += "mutex ctrl\n";
  out += "formula " + ltl::to_string(spec.formula) + "\n";
  return out;
}

std::string format_arch_line(const Architecture& arch) {
  std::string out = "arch env " + braced(arch.env) + " ctrl " + braced(arch.ctrl) + " plant " + braced(arch.plant);
  if (arch.ctrl_mutex) out += " mutex";
  return out;
}

Architecture parse_arch_line(std::string_view line_text, std::size_t line_number) {
  text::Line line{line_number, std::string(line_text)};
  const auto toks = text::tokenize(line);
  SourcePos start{line_number, 1};
  if (toks.size() != 7 && toks.size() != 8) throw SyntaxError(start, "malformed 'arch' line");
  const char* keys[] = {"arch", "env", nullptr, "ctrl", nullptr, "plant", nullptr};
  for (std::size_t i = 0; i < 7; ++i) {
    if (keys[i] == nullptr) {
      if (toks[i].kind != text::Token::Kind::Group) throw SyntaxError(toks[i].pos, "expected '{...}'");
    } else if (toks[i].kind != text::Token::Kind::Word || toks[i].word != keys[i]) {
      throw SyntaxError(toks[i].pos, std::string("expected '") + keys[i] + "'");
    }
  }
  Architecture arch;
  arch.env = props_at(toks[2].group, toks[2].pos);
  arch.ctrl = props_at(toks[4].group, toks[4].pos);
  arch.plant = props_at(toks[6].group, toks[6].pos);
  if (toks.size() == 8) {
    if (toks[7].word != "mutex") throw SyntaxError(toks[7].pos, "expected 'mutex'");
    arch.ctrl_mutex = true;
  }
  arch.validate();
  return arch;
}

}  // namespace ucl
