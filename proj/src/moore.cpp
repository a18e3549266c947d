#include "ucl/moore.hpp"

#include <map>
#include <optional>
#include <unordered_map>

#include "ucl/error.hpp"

namespace ucl {

namespace {

using text::Token;

std::optional<Role> role_from(std::string_view w) {
  if (w == "plant") return Role::Plant;
  if (w == "controller") return Role::Controller;
  if (w == "environment") return Role::Environment;
  return std::nullopt;
}

std::vector<std::string> names_in(const std::vector<Token>& toks) {
  std::vector<std::string> out;
  for (std::size_t i = 1; i < toks.size(); ++i) {
    if (toks[i].kind != Token::Kind::Word) throw SyntaxError(toks[i].pos, "expected a proposition name");
    if (!is_identifier(toks[i].word)) throw SyntaxError(toks[i].pos, "malformed proposition name");
    out.push_back(toks[i].word);
  }
  return out;
}

Valuation group_valuation(const PropSet& set, const Token& t) {
  try {
    return set.valuation_of(t.group);
  } catch (const UnknownAtom& e) {
    throw UnknownAtom(e.name(), t.pos);
  }
}

}  // namespace

const char* role_name(Role r) {
  switch (r) {
    case Role::Plant: return "plant";
    case Role::Controller: return "controller";
    case Role::Environment: return "environment";
  }
  return "plant";
}

std::size_t MooreMachine::state_index(std::string_view n) const {
  for (std::size_t s = 0; s < state_names.size(); ++s) {
    if (state_names[s] == n) return s;
  }
  throw UnknownState(std::string(n));
}

void MooreMachine::check() const {
  const std::size_t n = num_states();
  if (n == 0 || initial >= n) throw InternalError("machine '" + name + "' has no valid initial state");
  if (tau.size() != n * input_count() || state_names.size() != n) {
    throw InternalError("machine '" + name + "' has malformed tables");
  }
  for (auto t : tau) {
    if (t >= n) throw InternalError("machine '" + name + "' transition out of range");
  }
  for (auto l : label) {
    if (l > outputs.full_mask()) throw InternalError("machine '" + name + "' label out of range");
  }
}

MooreMachine parse_machine_block(const std::vector<text::Line>& lines, std::size_t& pos) {
  if (pos >= lines.size()) throw SyntaxError({}, "expected a machine block");
  const auto header = text::tokenize(lines[pos]);
  auto role = header[0].kind == Token::Kind::Word ? role_from(header[0].word) : std::nullopt;
  if (!role || header.size() != 2 || header[1].kind != Token::Kind::Word) {
    throw SyntaxError(header[0].pos, "expected 'plant|controller|environment <name>'");
  }
  MooreMachine m;
  m.role = *role;
  m.name = header[1].word;
  ++pos;

  std::optional<PropSet> inputs, outputs;
  std::optional<std::pair<std::string, SourcePos>> init;
  struct StateDecl {
    std::vector<std::string> label;
    SourcePos pos;
  };
  struct Trans {
    std::string src, dst;
    std::optional<Token> guard;  // nullopt for '*'
    SourcePos pos;
  };
  std::map<std::string, std::size_t> index;
  std::vector<StateDecl> decls;
  std::vector<Trans> trans;

  for (; pos < lines.size(); ++pos) {
    const auto toks = text::tokenize(lines[pos]);
    const Token& k = toks[0];
    if (k.kind != Token::Kind::Word) throw SyntaxError(k.pos, "expected a keyword");
    if (role_from(k.word) || k.word == "aut" || k.word == "pos" || k.word == "neg" || k.word == "prophecy") break;
    if (k.word == "inputs" || k.word == "outputs") {
      auto& slot = k.word == "inputs" ? inputs : outputs;
      if (slot) throw SyntaxError(k.pos, "duplicate '" + k.word + "' line");
      auto names = names_in(toks);
      slot = PropSet(names);
      if (slot->size() != names.size()) throw SyntaxError(k.pos, "duplicate proposition");
    } else if (k.word == "init") {
      if (init) throw SyntaxError(k.pos, "duplicate 'init' line");
      if (toks.size() != 2 || toks[1].kind != Token::Kind::Word) throw SyntaxError(k.pos, "expected 'init <state>'");
      init.emplace(toks[1].word, toks[1].pos);
    } else if (k.word == "state") {
      if (toks.size() != 3 || toks[1].kind != Token::Kind::Word || toks[2].kind != Token::Kind::Group) {
        throw SyntaxError(k.pos, "expected 'state <id> {<props>}'");
      }
      if (!index.emplace(toks[1].word, decls.size()).second) {
        throw SyntaxError(toks[1].pos, "duplicate state '" + toks[1].word + "'");
      }
      m.state_names.push_back(toks[1].word);
      decls.push_back({toks[2].group, toks[2].pos});
    } else if (k.word == "trans") {
      if (toks.size() != 4 || toks[1].kind != Token::Kind::Word || toks[3].kind != Token::Kind::Word ||
          toks[2].kind == Token::Kind::Word) {
        throw SyntaxError(k.pos, "expected 'trans <id> {<props>}|* <id>'");
      }
      Trans t{toks[1].word, toks[3].word, std::nullopt, k.pos};
      if (toks[2].kind == Token::Kind::Group) t.guard = toks[2];
      trans.push_back(std::move(t));
    } else {
      throw SyntaxError(k.pos, "unknown keyword '" + k.word + "'");
    }
  }

  const SourcePos hpos = header[0].pos;
  if (!inputs) throw SyntaxError(hpos, "missing 'inputs' line");
  if (!outputs) throw SyntaxError(hpos, "missing 'outputs' line");
  if (!init) throw SyntaxError(hpos, "missing 'init' line");
  if (decls.empty()) throw SyntaxError(hpos, "machine without states");
  if (!inputs->disjoint(*outputs)) throw SyntaxError(hpos, "inputs and outputs overlap");
  if (inputs->size() > kMaxInputs) throw InputWidthExceeded(inputs->size(), kMaxInputs);
  m.inputs = *inputs;
  m.outputs = *outputs;

  auto lookup = [&](const std::string& name, SourcePos p) {
    auto it = index.find(name);
    if (it == index.end()) throw UnknownState(name, p);
    return it->second;
  };
  m.initial = lookup(init->first, init->second);
  for (const auto& d : decls) {
    Token t;
    t.group = d.label;
    t.pos = d.pos;
    m.label.push_back(group_valuation(m.outputs, t));
  }

  const std::size_t n = decls.size();
  const std::size_t width = m.input_count();
  constexpr std::uint32_t kUnset = UINT32_MAX;
  m.tau.assign(n * width, kUnset);
  std::vector<std::uint32_t> deflt(n, kUnset);
  for (const auto& t : trans) {
    const std::size_t s = lookup(t.src, t.pos);
    const auto d = static_cast<std::uint32_t>(lookup(t.dst, t.pos));
    if (!t.guard) {
      if (deflt[s] != kUnset) throw SyntaxError(t.pos, "second default edge for state '" + t.src + "'");
      deflt[s] = d;
      continue;
    }
    const Valuation v = group_valuation(m.inputs, *t.guard);
    auto& slot = m.tau[s * width + v];
    if (slot != kUnset) throw NondeterministicGuard(t.src, m.inputs.format(v), t.pos);
    slot = d;
  }
  for (std::size_t s = 0; s < n; ++s) {
    for (std::size_t v = 0; v < width; ++v) {
      auto& slot = m.tau[s * width + v];
      if (slot != kUnset) continue;
      if (deflt[s] == kUnset) throw IncompleteTransitions(m.state_names[s]);
      slot = deflt[s];
    }
  }
  return m;
}

MooreMachine parse_plant(std::string_view input) {
  const auto lines = text::split_lines(input);
  std::size_t pos = 0;
  MooreMachine m = parse_machine_block(lines, pos);
  if (pos != lines.size()) throw SyntaxError({lines[pos].number, 1}, "unexpected line after machine");
  return m;
}

MooreMachine widen_inputs(const MooreMachine& m, const PropSet& inputs) {
  if (!m.inputs.subset_of(inputs)) throw InternalError("widened input set must contain the machine's inputs");
  if (!inputs.disjoint(m.outputs)) throw SyntaxError({}, "widened inputs overlap the outputs of '" + m.name + "'");
  if (inputs.size() > kMaxInputs) throw InputWidthExceeded(inputs.size(), kMaxInputs);
  MooreMachine r = m;
  r.inputs = inputs;
  const Remap to_old(inputs, m.inputs);
  r.tau.clear();
  for (std::size_t s = 0; s < m.num_states(); ++s) {
    for (Valuation v = 0; v < r.input_count(); ++v) r.tau.push_back(static_cast<std::uint32_t>(m.next(s, to_old(v))));
  }
  return r;
}

std::vector<std::size_t> bfs_order(const MooreMachine& m, std::size_t from) {
  std::vector<char> seen(m.num_states(), 0);
  std::vector<std::size_t> order{from};
  seen[from] = 1;
  for (std::size_t i = 0; i < order.size(); ++i) {
    for (Valuation v = 0; v < m.input_count(); ++v) {
      const std::size_t t = m.next(order[i], v);
      if (!seen[t]) {
        seen[t] = 1;
        order.push_back(t);
      }
    }
  }
  return order;
}

std::string serialize_plant(const MooreMachine& m) {
  std::vector<std::size_t> order = bfs_order(m, m.initial);
  std::vector<std::size_t> rank(m.num_states(), SIZE_MAX);
  for (std::size_t i = 0; i < order.size(); ++i) rank[order[i]] = i;
  for (std::size_t s = 0; s < m.num_states(); ++s) {
    if (rank[s] == SIZE_MAX) {
      rank[s] = order.size();
      order.push_back(s);
    }
  }
  std::string out = std::string(role_name(m.role)) + " " + m.name + "\n";
  out += "inputs";
  for (const auto& p : m.inputs.names()) out += " " + p;
  out += "\noutputs";
  for (const auto& p : m.outputs.names()) out += " " + p;
  out += "\ninit " + m.state_names[m.initial] + "\n";
  const std::size_t width = m.input_count();
  for (std::size_t s : order) {
    out += "state " + m.state_names[s] + " " + m.outputs.format(m.label[s]) + "\n";
    // Default edge: the most frequent successor, ties to the earliest in output order.
    std::unordered_map<std::size_t, std::size_t> freq;
    for (std::size_t v = 0; v < width; ++v) ++freq[m.next(s, v)];
    std::size_t best = m.next(s, 0);
    for (const auto& [t, c] : freq) {
      if (c > freq[best] || (c == freq[best] && rank[t] < rank[best])) best = t;
    }
    for (std::size_t v = 0; v < width; ++v) {
      const std::size_t t = m.next(s, v);
      if (t != best) out += "trans " + m.state_names[s] + " " + m.inputs.format(v) + " " + m.state_names[t] + "\n";
    }
    out += "trans " + m.state_names[s] + " * " + m.state_names[best] + "\n";
  }
  return out;
}

MooreMachine parallel_compose(const MooreMachine& m1, const MooreMachine& m2) {
  const PropSet overlap = m1.outputs.intersect(m2.outputs);
  if (!overlap.empty()) {
    std::string names;
    for (const auto& n : overlap.names()) names += (names.empty() ? "" : " ") + n;
    throw OutputOverlap(names);
  }
  MooreMachine r;
  r.name = m1.name + "_" + m2.name;
  r.role = m1.role == m2.role ? m1.role : Role::Plant;
  r.outputs = m1.outputs.unite(m2.outputs);
  r.inputs = m1.inputs.unite(m2.inputs).minus(r.outputs);
  if (r.inputs.size() > kMaxInputs) throw InputWidthExceeded(r.inputs.size(), kMaxInputs);

  // Everything visible to either component in one bit space.
  const PropSet all = r.inputs.unite(r.outputs);
  const Remap in_to_all(r.inputs, all), o1_to_all(m1.outputs, all), o2_to_all(m2.outputs, all);
  const Remap all_to_i1(all, m1.inputs), all_to_i2(all, m2.inputs);
  const Remap o1_to_o(m1.outputs, r.outputs), o2_to_o(m2.outputs, r.outputs);

  std::unordered_map<std::uint64_t, std::uint32_t> index;
  std::vector<std::pair<std::size_t, std::size_t>> states;
  auto intern = [&](std::size_t a, std::size_t b) -> std::uint32_t {
    const std::uint64_t key = (static_cast<std::uint64_t>(a) << 32) | b;
    auto [it, inserted] = index.emplace(key, static_cast<std::uint32_t>(states.size()));
    if (inserted) states.emplace_back(a, b);
    return it->second;
  };
  intern(m1.initial, m2.initial);
  const std::size_t width = r.input_count();
  for (std::size_t i = 0; i < states.size(); ++i) {
    const auto [a, b] = states[i];
    const Valuation seen = o1_to_all(m1.label[a]) | o2_to_all(m2.label[b]);
    for (Valuation v = 0; v < width; ++v) {
      const Valuation sigma = in_to_all(v) | seen;
      r.tau.push_back(intern(m1.next(a, all_to_i1(sigma)), m2.next(b, all_to_i2(sigma))));
    }
  }
  for (const auto& [a, b] : states) {
    r.state_names.push_back(m1.state_names[a] + "." + m2.state_names[b]);
    r.label.push_back(o1_to_o(m1.label[a]) | o2_to_o(m2.label[b]));
  }
  r.initial = 0;
  return r;
}

}  // namespace ucl
