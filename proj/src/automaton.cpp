#include "ucl/automaton.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <unordered_map>

#include "ucl/error.hpp"
#include "ucl/moore.hpp"
#include "ucl/spec.hpp"

namespace ucl {

namespace {

using ltl::Formula;
using ltl::Op;

class Deriver {
 public:
  explicit Deriver(const PropSet& ap) : ap_(ap) {}

  // One-letter derivative; the residual obligation for the rest of the trace.
  Formula derive(const Formula& f, Valuation sigma) const { return normalize(raw(f, sigma)); }

  // Absorbed disjunctive normal form over temporal literals. ACI alone lets
  // derivatives such as those of (G p) W q nest without bound.
  static Formula normalize(const Formula& f) {
    Clauses c = dnf(ltl::canonicalize(f));
    for (auto& clause : c) {
      std::sort(clause.begin(), clause.end(), ltl::Less{});
      clause.erase(std::unique(clause.begin(), clause.end(), same), clause.end());
    }
    std::sort(c.begin(), c.end(), [](const Clause& a, const Clause& b) { return a.size() < b.size(); });
    Clauses kept;
    for (const auto& clause : c) {
      bool absorbed = false;
      for (const auto& k : kept) {
        if (std::includes(clause.begin(), clause.end(), k.begin(), k.end(), ltl::Less{})) {
          absorbed = true;
          break;
        }
      }
      if (!absorbed) kept.push_back(clause);
    }
    std::vector<Formula> disjuncts;
    for (const auto& clause : kept) disjuncts.push_back(ltl::nary(Op::And, clause));
    return ltl::canonicalize(ltl::nary(Op::Or, std::move(disjuncts)));
  }

 private:
  using Clause = std::vector<Formula>;
  using Clauses = std::vector<Clause>;

  static bool same(const Formula& a, const Formula& b) { return ltl::equal(a, b); }

  static Clauses dnf(const Formula& f) {
    switch (f->op) {
      case Op::True: return {Clause{}};
      case Op::False: return {};
      case Op::Or: {
        Clauses out;
        for (const auto& a : f->args) {
          Clauses c = dnf(a);
          out.insert(out.end(), c.begin(), c.end());
        }
        return out;
      }
      case Op::And: {
        Clauses out{Clause{}};
        for (const auto& a : f->args) {
          const Clauses c = dnf(a);
          Clauses next;
          for (const auto& x : out) {
            for (const auto& y : c) {
              Clause z = x;
              z.insert(z.end(), y.begin(), y.end());
              next.push_back(std::move(z));
            }
          }
          out = std::move(next);
        }
        return out;
      }
      default: return {Clause{f}};
    }
  }

  Formula raw(const Formula& f, Valuation sigma) const {
    switch (f->op) {
      case Op::True:
      case Op::False: return f;
      case Op::Atom: return holds(f->atom, sigma) ? ltl::make_true() : ltl::make_false();
      case Op::Not: return holds(f->args[0]->atom, sigma) ? ltl::make_false() : ltl::make_true();
      case Op::And:
      case Op::Or: {
        std::vector<Formula> parts;
        parts.reserve(f->args.size());
        for (const auto& a : f->args) parts.push_back(raw(a, sigma));
        return ltl::nary(f->op, std::move(parts));
      }
      case Op::Next: return f->args[0];
      case Op::Globally: return ltl::nary(Op::And, {raw(f->args[0], sigma), f});
      case Op::WeakUntil:
        return ltl::nary(Op::Or, {raw(f->args[1], sigma), ltl::nary(Op::And, {raw(f->args[0], sigma), f})});
      case Op::Release:
        return ltl::nary(Op::And, {raw(f->args[1], sigma), ltl::nary(Op::Or, {raw(f->args[0], sigma), f})});
      default: throw InternalError("derivative of a non-safety operator");
    }
  }

  bool holds(const std::string& atom, Valuation sigma) const {
    auto i = ap_.index_of(atom);
    if (!i) throw UnknownAtom(atom);
    return (sigma >> *i) & 1U;
  }

  const PropSet& ap_;
};

}  // namespace

std::size_t SafetyAutomaton::sink() const {
  for (std::size_t q = 0; q < num_states(); ++q) {
    if (!is_safe(q)) return q;
  }
  return num_states();
}

std::size_t SafetyAutomaton::state_index(std::string_view n) const {
  for (std::size_t q = 0; q < state_names.size(); ++q) {
    if (state_names[q] == n) return q;
  }
  throw UnknownState(std::string(n));
}

SafetyAutomaton ltl_to_dsa(const Formula& f, const PropSet& ap, std::size_t state_cap) {
  if (state_cap == 0) throw InvalidConfig("state cap must be positive");
  for (const auto& a : ltl::atoms(f)) {
    if (!ap.contains(a)) throw UnknownAtom(a);
  }
  const Deriver d(ap);
  const std::size_t letters = ap.valuation_count();

  // Raw exploration: every distinct canonical derivative is a state.
  std::vector<Formula> forms;
  std::map<Formula, std::uint32_t, ltl::Less> index;
  std::vector<std::uint32_t> raw_delta;
  auto intern = [&](const Formula& g) -> std::uint32_t {
    auto [it, inserted] = index.emplace(g, static_cast<std::uint32_t>(forms.size()));
    if (inserted) {
      if (forms.size() >= state_cap) throw StateCapExceeded(state_cap);
      forms.push_back(g);
    }
    return it->second;
  };
  intern(Deriver::normalize(f));
  for (std::size_t q = 0; q < forms.size(); ++q) {
    const Formula cur = forms[q];
    for (Valuation s = 0; s < letters; ++s) raw_delta.push_back(intern(d.derive(cur, s)));
  }

  // Greatest fixpoint of states with a live successor; the rest have empty language.
  const std::size_t n = forms.size();
  std::vector<char> live(n);
  for (std::size_t q = 0; q < n; ++q) live[q] = forms[q]->op != Op::False;
  for (bool changed = true; changed;) {
    changed = false;
    for (std::size_t q = 0; q < n; ++q) {
      if (!live[q]) continue;
      bool any = false;
      for (std::size_t s = 0; s < letters && !any; ++s) any = live[raw_delta[q * letters + s]];
      if (!any) {
        live[q] = 0;
        changed = true;
      }
    }
  }

  // Renumber live states in BFS order; dead states collapse into one trailing sink.
  constexpr std::uint32_t kUnset = UINT32_MAX;
  std::vector<std::uint32_t> order(n, kUnset);
  std::vector<std::size_t> bfs;
  bool sink_used = false;
  if (live[0]) {
    order[0] = 0;
    bfs.push_back(0);
  } else {
    sink_used = true;
  }
  for (std::size_t i = 0; i < bfs.size(); ++i) {
    const std::size_t q = bfs[i];
    for (std::size_t s = 0; s < letters; ++s) {
      const std::uint32_t t = raw_delta[q * letters + s];
      if (!live[t]) {
        sink_used = true;
      } else if (order[t] == kUnset) {
        order[t] = static_cast<std::uint32_t>(bfs.size());
        bfs.push_back(t);
      }
    }
  }
  const std::size_t safe_count = bfs.size();
  const std::uint32_t sink = static_cast<std::uint32_t>(safe_count);
  const std::size_t total = safe_count + (sink_used ? 1 : 0);

  SafetyAutomaton a;
  a.props = ap;
  a.initial = live[0] ? 0 : sink;
  a.safe.assign(total, 1);
  a.delta.resize(total * letters);
  for (std::size_t i = 0; i < safe_count; ++i) {
    const std::size_t q = bfs[i];
    for (std::size_t s = 0; s < letters; ++s) {
      const std::uint32_t t = raw_delta[q * letters + s];
      a.delta[i * letters + s] = live[t] ? order[t] : sink;
    }
    a.derivatives.push_back(forms[q]);
  }
  if (sink_used) {
    a.safe[sink] = 0;
    for (std::size_t s = 0; s < letters; ++s) a.delta[sink * letters + s] = sink;
    a.derivatives.push_back(ltl::make_false());
  }
  for (std::size_t q = 0; q < total; ++q) a.state_names.push_back("q" + std::to_string(q));
  return a;
}

SafetyAutomaton ltl_to_dsa(const Formula& f, const Architecture& arch, std::size_t state_cap) {
  return ltl_to_dsa(f, arch.all(), state_cap);
}

Run run_trace(const SafetyAutomaton& a, const std::vector<Valuation>& trace) {
  Run r;
  std::size_t q = a.initial;
  r.states.push_back(q);
  r.safe = a.is_safe(q);
  for (Valuation sigma : trace) {
    if (sigma > a.props.full_mask()) throw AlphabetMismatch("letter outside 2^AP");
    q = a.step(q, sigma);
    r.states.push_back(q);
    r.safe = r.safe && a.is_safe(q);
  }
  return r;
}

ProductGraph product_with_machine(const SafetyAutomaton& a, const MooreMachine& m) {
  if (!m.inputs.subset_of(a.props) || !m.outputs.subset_of(a.props)) {
    throw AlphabetMismatch("machine '" + m.name + "' uses propositions outside the automaton alphabet");
  }
  const Valuation out_mask = a.props.mask_of(m.outputs);
  const Remap label_to_ap(m.outputs, a.props);
  const Remap ap_to_in(a.props, m.inputs);
  // Letters agreeing with the machine output: fixed output bits, free bits elsewhere.
  std::vector<Valuation> free_letters;
  const Valuation free_mask = a.props.full_mask() & ~out_mask;
  for (Valuation v = free_mask;; v = (v - 1) & free_mask) {
    free_letters.push_back(v);
    if (v == 0) break;
  }
  std::reverse(free_letters.begin(), free_letters.end());

  ProductGraph g;
  std::unordered_map<std::uint64_t, std::uint32_t> index;
  auto intern = [&](std::size_t q, std::size_t s) -> std::uint32_t {
    const std::uint64_t key = (static_cast<std::uint64_t>(q) << 32) | s;
    auto [it, inserted] = index.emplace(key, static_cast<std::uint32_t>(g.nodes.size()));
    if (inserted) {
      g.nodes.emplace_back(static_cast<std::uint32_t>(q), static_cast<std::uint32_t>(s));
      g.safe.push_back(a.is_safe(q));
      g.edges.emplace_back();
    }
    return it->second;
  };
  intern(a.initial, m.initial);
  for (std::size_t i = 0; i < g.nodes.size(); ++i) {
    const auto [q, s] = g.nodes[i];
    const Valuation o = label_to_ap(m.label[s]);
    std::vector<ProductEdge> out;
    out.reserve(free_letters.size());
    for (Valuation f : free_letters) {
      const Valuation sigma = f | o;
      const std::uint32_t t = intern(a.step(q, sigma), m.next(s, ap_to_in(sigma)));
      out.push_back({sigma, t});
    }
    g.edges[i] = std::move(out);
  }
  return g;
}

std::string serialize_aut(const SafetyAutomaton& a) {
  std::string out = "aut " + a.name + "\n";
  out += "props";
  for (const auto& p : a.props.names()) out += " " + p;
  out += "\ninit " + a.state_names[a.initial] + "\nsafe";
  for (std::size_t q = 0; q < a.num_states(); ++q) {
    if (a.is_safe(q)) out += " " + a.state_names[q];
  }
  out += "\n";
  for (std::size_t q = 0; q < a.num_states(); ++q) {
    for (Valuation s = 0; s < a.letter_count(); ++s) {
      out += "trans " + a.state_names[q] + " " + a.props.format(s) + " " + a.state_names[a.step(q, s)] + "\n";
    }
  }
  return out;
}

SafetyAutomaton parse_aut_block(const std::vector<text::Line>& lines, std::size_t& pos) {
  using text::Token;
  if (pos >= lines.size()) throw SyntaxError({}, "expected an 'aut' block");
  auto toks = text::tokenize(lines[pos]);
  if (toks.size() != 2 || toks[0].word != "aut" || toks[1].kind != Token::Kind::Word) {
    throw SyntaxError(toks.front().pos, "expected 'aut <name>'");
  }
  SafetyAutomaton a;
  a.name = toks[1].word;
  const SourcePos header = toks[0].pos;
  ++pos;

  auto expect_line = [&](const char* key) {
    if (pos >= lines.size()) throw SyntaxError(header, std::string("missing '") + key + "' line");
    auto t = text::tokenize(lines[pos]);
    if (t[0].kind != Token::Kind::Word || t[0].word != key) {
      throw SyntaxError(t[0].pos, std::string("expected '") + key + "'");
    }
    ++pos;
    for (std::size_t i = 1; i < t.size(); ++i) {
      if (t[i].kind != Token::Kind::Word) throw SyntaxError(t[i].pos, "expected a name");
    }
    return t;
  };
  auto props_toks = expect_line("props");
  std::vector<std::string> names;
  for (std::size_t i = 1; i < props_toks.size(); ++i) names.push_back(props_toks[i].word);
  a.props = PropSet(names);
  if (a.props.size() != names.size()) throw SyntaxError(props_toks[0].pos, "duplicate proposition");
  if (a.props.size() > kMaxProps) throw InputWidthExceeded(a.props.size(), kMaxProps);
  auto init_toks = expect_line("init");
  if (init_toks.size() != 2) throw SyntaxError(init_toks[0].pos, "expected 'init <state>'");
  auto safe_toks = expect_line("safe");

  struct Edge {
    std::string src, dst;
    Valuation letter;
    SourcePos pos;
  };
  std::vector<Edge> edges;
  std::map<std::string, std::size_t> names_index;
  while (pos < lines.size()) {
    auto t = text::tokenize(lines[pos]);
    if (t[0].kind != Token::Kind::Word || t[0].word != "trans") break;
    if (t.size() != 4 || t[1].kind != Token::Kind::Word || t[2].kind != Token::Kind::Group ||
        t[3].kind != Token::Kind::Word) {
      throw SyntaxError(t[0].pos, "expected 'trans <q> {<props>} <q'>'");
    }
    if (names_index.emplace(t[1].word, a.state_names.size()).second) a.state_names.push_back(t[1].word);
    std::vector<std::string> members(t[2].group);
    Valuation v;
    try {
      v = a.props.valuation_of(members);
    } catch (const UnknownAtom& e) {
      throw UnknownAtom(e.name(), t[2].pos);
    }
    edges.push_back({t[1].word, t[3].word, v, t[0].pos});
    ++pos;
  }
  const std::size_t n = a.state_names.size();
  if (n == 0) throw SyntaxError(header, "automaton without transitions");
  const std::size_t letters = a.letter_count();
  a.delta.assign(n * letters, UINT32_MAX);
  for (const auto& e : edges) {
    auto dst = names_index.find(e.dst);
    if (dst == names_index.end()) throw UnknownState(e.dst, e.pos);
    auto& slot = a.delta[names_index[e.src] * letters + e.letter];
    if (slot != UINT32_MAX) throw NondeterministicGuard(e.src, a.props.format(e.letter), e.pos);
    slot = static_cast<std::uint32_t>(dst->second);
  }
  for (std::size_t q = 0; q < n; ++q) {
    for (std::size_t s = 0; s < letters; ++s) {
      if (a.delta[q * letters + s] == UINT32_MAX) throw IncompleteTransitions(a.state_names[q]);
    }
  }
  auto init = names_index.find(init_toks[1].word);
  if (init == names_index.end()) throw UnknownState(init_toks[1].word, init_toks[1].pos);
  a.initial = init->second;
  a.safe.assign(n, 0);
  for (std::size_t i = 1; i < safe_toks.size(); ++i) {
    auto it = names_index.find(safe_toks[i].word);
    if (it == names_index.end()) throw UnknownState(safe_toks[i].word, safe_toks[i].pos);
    a.safe[it->second] = 1;
  }
  for (std::size_t q = 0; q < n; ++q) {
    if (a.safe[q]) continue;
    for (std::size_t s = 0; s < letters; ++s) {
      if (a.safe[a.delta[q * letters + s]]) {
        throw SyntaxError(header, "unsafe state '" + a.state_names[q] + "' leads back to a safe state");
      }
    }
  }
  return a;
}

SafetyAutomaton parse_aut(std::string_view input) {
  const auto lines = text::split_lines(input);
  std::size_t pos = 0;
  SafetyAutomaton a = parse_aut_block(lines, pos);
  if (pos != lines.size()) throw SyntaxError({lines[pos].number, 1}, "unexpected line after automaton");
  return a;
}

}  // namespace ucl
