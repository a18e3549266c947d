#include "ucl/prophecy.hpp"

#include <algorithm>

#include "ucl/error.hpp"
#include "ucl/game.hpp"
#include "ucl/text.hpp"

namespace ucl {

bool SampleSet::insert(PointedPlant p) {
  auto [it, inserted] = index_.emplace(p.fingerprint, items_.size());
  if (inserted) items_.push_back(std::move(p));
  return inserted;
}

const PointedPlant* SampleSet::find(std::uint64_t fp) const {
  auto it = index_.find(fp);
  return it == index_.end() ? nullptr : &items_[it->second];
}

namespace {

const SampleSet& lookup(const std::map<SampleKey, SampleSet>& m, std::size_t q, Valuation alpha) {
  static const SampleSet kEmpty;
  auto it = m.find({static_cast<std::uint32_t>(q), alpha});
  return it == m.end() ? kEmpty : it->second;
}

void insert_checked(Approximation& w, const SampleKey& key, const PointedPlant& p, bool positive) {
  auto& mine = positive ? w.pos : w.neg;
  const auto& other = positive ? w.neg : w.pos;
  if (auto it = other.find(key); it != other.end()) {
    if (const PointedPlant* clash = it->second.find(p.fingerprint); clash && bisimilar(*clash, p)) {
      throw ConflictingSample(key.q, w.arch.ctrl.format(key.alpha), p.fingerprint);
    }
  }
  mine[key].insert(p);
}

std::vector<text::Token> tokens(const text::Line& l) { return text::tokenize(l); }

SampleKey parse_key(const SafetyAutomaton& a, const Architecture& arch, const text::Token& q,
                    const text::Token& group) {
  if (q.kind != text::Token::Kind::Word) throw SyntaxError(q.pos, "expected an automaton state");
  if (group.kind != text::Token::Kind::Group) throw SyntaxError(group.pos, "expected '{<ctrl props>}'");
  std::size_t qi;
  try {
    qi = a.state_index(q.word);
  } catch (const UnknownState&) {
    throw UnknownState(q.word, q.pos);
  }
  Valuation alpha;
  try {
    alpha = arch.ctrl.valuation_of(group.group);
  } catch (const UnknownAtom& e) {
    throw UnknownAtom(e.name(), group.pos);
  }
  if (!arch.admissible(alpha)) throw SyntaxError(group.pos, "inadmissible controller valuation");
  return {static_cast<std::uint32_t>(qi), alpha};
}

void expect_header(const std::vector<text::Line>& lines, const char* keyword, std::string& name) {
  if (lines.empty()) throw SyntaxError({1, 1}, std::string("expected '") + keyword + " <name>'");
  auto t = tokens(lines[0]);
  if (t.size() != 2 || t[0].word != keyword || t[1].kind != text::Token::Kind::Word) {
    throw SyntaxError(t[0].pos, std::string("expected '") + keyword + " <name>'");
  }
  name = t[1].word;
  if (lines.size() < 2) throw SyntaxError({lines[0].number, 1}, "missing 'arch' line");
}

std::string key_text(const SafetyAutomaton& a, const Architecture& arch, const SampleKey& k) {
  return a.state_names[k.q] + " " + arch.ctrl.format(k.alpha);
}

}  // namespace

const SampleSet& Approximation::positives(std::size_t q, Valuation alpha) const { return lookup(pos, q, alpha); }
const SampleSet& Approximation::negatives(std::size_t q, Valuation alpha) const { return lookup(neg, q, alpha); }

Approximation make_approximation(SafetyAutomaton a, Architecture arch, std::string name) {
  Approximation w;
  w.name = std::move(name);
  w.arch = std::move(arch);
  w.automaton = std::move(a);
  w.automaton.name = w.name;
  return w;
}

Approximation make_approximation(const SpecDecl& spec, std::size_t state_cap) {
  return make_approximation(ltl_to_dsa(spec.formula, spec.arch, state_cap), spec.arch, spec.name);
}

RefineReport refine(Approximation& w, std::shared_ptr<const MooreMachine> m) {
  const SafetyGame g = build_game(w.automaton, *m, w.arch);
  const WinningRegion win = solve(g);
  RefineReport r;
  r.initial_winning = win.win[g.node(w.automaton.initial, m->initial)] != 0;
  std::vector<PointedPlant> subs;
  subs.reserve(m->num_states());
  for (std::size_t s = 0; s < m->num_states(); ++s) subs.push_back(sub_plant(m, s));
  for (std::size_t q = 0; q < w.automaton.num_states(); ++q) {
    for (std::size_t s = 0; s < m->num_states(); ++s) {
      const std::uint64_t mask = win.winning[g.node(q, s)];
      for (std::size_t a = 0; a < g.num_alpha; ++a) {
        const SampleKey key{static_cast<std::uint32_t>(q), g.alphas[a]};
        const bool positive = (mask >> a) & 1U;
        const std::size_t before = (positive ? w.pos : w.neg)[key].size();
        insert_checked(w, key, subs[s], positive);
        const std::size_t after = (positive ? w.pos : w.neg)[key].size();
        (positive ? r.added_pos : r.added_neg) += after - before;
      }
    }
  }
  return r;
}

const ctl::Formula& ProphecyController::prophecy(std::size_t q, Valuation alpha) const {
  static const ctl::Formula kFalse = ctl::make_false();
  auto it = kappa.find({static_cast<std::uint32_t>(q), alpha});
  return it == kappa.end() ? kFalse : it->second;
}

std::size_t ProphecyController::max_formula_size() const {
  std::size_t m = 0;
  for (const auto& [k, f] : kappa) m = std::max(m, ctl::size(f));
  return m;
}

ProphecyController learn_approx(Approximation& w, const std::vector<std::shared_ptr<const MooreMachine>>& plants,
                                const LearnerParams& params) {
  params.validate();
  for (const auto& m : plants) refine(w, m);
  ProphecyController u;
  u.name = w.name;
  u.arch = w.arch;
  u.automaton = w.automaton;
  for (std::size_t q = 0; q < w.automaton.num_states(); ++q) {
    for (Valuation alpha : w.arch.ctrl_valuations()) {
      const SampleKey key{static_cast<std::uint32_t>(q), alpha};
      if (!w.automaton.is_safe(q)) {
        u.kappa[key] = ctl::make_false();
        continue;
      }
      const SampleSet& pos = w.positives(q, alpha);
      const SampleSet& neg = w.negatives(q, alpha);
      auto& cached = w.learned[key];
      if (!cached.formula || cached.pos_count != pos.size() || cached.neg_count != neg.size()) {
        cached.formula = learn_ctl(pos.items(), neg.items(), params);
        cached.pos_count = pos.size();
        cached.neg_count = neg.size();
      }
      u.kappa[key] = cached.formula;
    }
  }
  return u;
}

std::string serialize_upc(const ProphecyController& u) {
  std::string out = "upc " + u.name + "\n" + format_arch_line(u.arch) + "\n";
  SafetyAutomaton a = u.automaton;
  a.name = u.name;
  out += serialize_aut(a);
  std::vector<std::string> lines;
  for (const auto& [k, f] : u.kappa) lines.push_back("prophecy " + key_text(u.automaton, u.arch, k) + " : " + ctl::to_string(f));
  std::sort(lines.begin(), lines.end());
  for (const auto& l : lines) out += l + "\n";
  return out;
}

ProphecyController parse_upc(std::string_view input) {
  const auto lines = text::split_lines(input);
  ProphecyController u;
  expect_header(lines, "upc", u.name);
  u.arch = parse_arch_line(lines[1].text, lines[1].number);
  std::size_t pos = 2;
  u.automaton = parse_aut_block(lines, pos);
  if (!(u.automaton.props == u.arch.all())) throw AlphabetMismatch("automaton alphabet differs from the architecture");
  for (; pos < lines.size(); ++pos) {
    const auto& line = lines[pos];
    auto t = tokens(line);
    if (t[0].word != "prophecy" || t.size() < 4) throw SyntaxError(t[0].pos, "expected 'prophecy <q> {..} : <CTL>'");
    const SampleKey key = parse_key(u.automaton, u.arch, t[1], t[2]);
    const std::size_t colon = line.text.find(':', line.text.find('}'));
    if (colon == std::string::npos) throw SyntaxError(t[2].pos, "expected ':'");
    std::size_t start = colon + 1;
    while (start < line.text.size() && line.text[start] == ' ') ++start;
    const auto f = ctl::parse_ctl(std::string_view(line.text).substr(start), u.arch, {line.number, start + 1});
    if (!u.kappa.emplace(key, f).second) throw SyntaxError(t[0].pos, "duplicate prophecy");
  }
  return u;
}

std::string serialize_ucl(const Approximation& w) {
  std::string out = "ucl " + w.name + "\n" + format_arch_line(w.arch) + "\n";
  SafetyAutomaton a = w.automaton;
  a.name = w.name;
  out += serialize_aut(a);

  // Name each distinct plant table once; equal tables share a block.
  std::map<const MooreMachine*, std::string> name_of;
  std::map<std::uint64_t, std::string> by_table;
  std::map<std::string, const MooreMachine*> blocks;
  auto assign = [&](const MooreMachine* m) {
    if (name_of.count(m)) return;
    const std::uint64_t fp = table_fingerprint(*m);
    if (auto it = by_table.find(fp); it != by_table.end()) {
      name_of[m] = it->second;
      return;
    }
    std::string name = m->name;
    for (int i = 2; blocks.count(name); ++i) name = m->name + "_" + std::to_string(i);
    name_of[m] = name;
    by_table[fp] = name;
    blocks[name] = m;
  };
  for (const auto* side : {&w.pos, &w.neg}) {
    for (const auto& [k, set] : *side) {
      for (const auto& p : set.items()) assign(p.machine.get());
    }
  }
  for (const auto& [name, m] : blocks) {
    MooreMachine copy = *m;
    copy.name = name;
    out += serialize_plant(copy);
  }
  std::vector<std::string> lines;
  for (const auto& [tag, side] : {std::pair{"pos", &w.pos}, std::pair{"neg", &w.neg}}) {
    for (const auto& [k, set] : *side) {
      for (const auto& p : set.items()) {
        lines.push_back(std::string(tag) + " " + key_text(w.automaton, w.arch, k) + " " + name_of[p.machine.get()] +
                        "@" + p.state_name());
      }
    }
  }
  std::sort(lines.begin(), lines.end());
  for (const auto& l : lines) out += l + "\n";
  return out;
}

Approximation parse_ucl(std::string_view input) {
  const auto lines = text::split_lines(input);
  std::string name;
  expect_header(lines, "ucl", name);
  Architecture arch = parse_arch_line(lines[1].text, lines[1].number);
  std::size_t pos = 2;
  SafetyAutomaton a = parse_aut_block(lines, pos);
  if (!(a.props == arch.all())) throw AlphabetMismatch("automaton alphabet differs from the architecture");
  Approximation w = make_approximation(std::move(a), std::move(arch), name);

  std::map<std::string, std::shared_ptr<const MooreMachine>> plants;
  while (pos < lines.size()) {
    auto t = tokens(lines[pos]);
    if (t[0].word == "pos" || t[0].word == "neg") break;
    const SourcePos at = t[0].pos;
    auto m = std::make_shared<const MooreMachine>(parse_machine_block(lines, pos));
    if (!plants.emplace(m->name, m).second) throw SyntaxError(at, "duplicate plant '" + m->name + "'");
  }
  for (; pos < lines.size(); ++pos) {
    auto t = tokens(lines[pos]);
    if ((t[0].word != "pos" && t[0].word != "neg") || t.size() != 4 || t[3].kind != text::Token::Kind::Word) {
      throw SyntaxError(t[0].pos, "expected 'pos|neg <q> {..} <plant>@<state>'");
    }
    const SampleKey key = parse_key(w.automaton, w.arch, t[1], t[2]);
    const std::string& ref = t[3].word;
    const std::size_t at = ref.rfind('@');
    if (at == std::string::npos) throw SyntaxError(t[3].pos, "expected '<plant>@<state>'");
    auto it = plants.find(ref.substr(0, at));
    if (it == plants.end()) throw SyntaxError(t[3].pos, "unknown plant '" + ref.substr(0, at) + "'");
    PointedPlant p;
    try {
      p = sub_plant(it->second, std::string_view(ref).substr(at + 1));
    } catch (const UnknownState&) {
      throw UnknownState(ref.substr(at + 1), t[3].pos);
    }
    insert_checked(w, key, p, t[0].word == "pos");
  }
  return w;
}

}  // namespace ucl
