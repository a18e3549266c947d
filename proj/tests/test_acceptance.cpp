// Acceptance run: one PASS/FAIL line per criterion, nonzero exit on any failure.

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <functional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "oracles/separator_oracle.hpp"
#include "support/oracle_suites.hpp"
#include "support/properties.hpp"
#include "ucl/automaton.hpp"
#include "ucl/bench.hpp"
#include "ucl/ctl.hpp"
#include "ucl/error.hpp"
#include "ucl/game.hpp"
#include "ucl/kripke.hpp"
#include "ucl/mc.hpp"
#include "ucl/prophecy.hpp"
#include "ucl/synthesis.hpp"

using namespace ucl;

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

// Serialized artifacts collected for the round-trip criterion.
struct Artifacts {
  std::vector<std::pair<std::string, std::string>> items;  // (kind, text)
  void spec(const SpecDecl& s) { items.emplace_back("spec", serialize_spec(s)); }
  void plant(const MooreMachine& m) { items.emplace_back("plant", serialize_plant(m)); }
  void aut(const SafetyAutomaton& a) { items.emplace_back("aut", serialize_aut(a)); }
  void ucl(const Approximation& w) { items.emplace_back("ucl", serialize_ucl(w)); }
  void upc(const ProphecyController& u) { items.emplace_back("upc", serialize_upc(u)); }
  void bench(const Benchmark& b) {
    spec(b.spec);
    plant(*b.plant);
  }
};

Artifacts artifacts;

struct Check {
  bool ok = true;
  std::ostringstream detail;
  void require(bool cond, const std::string& what) {
    if (cond) return;
    if (!ok) detail << "; ";
    ok = false;
    detail << what;
  }
};

std::set<std::string> state_names(const SampleSet& s) {
  std::set<std::string> out;
  for (const auto& p : s.items()) out.insert(p.state_name());
  return out;
}

bool holds(const PointedPlant& p, const ctl::Formula& f) { return mc_ctl(kripke_view(p), f).holds_at_root; }

bool separates(const SampleSet& pos, const SampleSet& neg, const ctl::Formula& f) {
  for (const auto& p : pos.items()) {
    if (!holds(p, f)) return false;
  }
  for (const auto& p : neg.items()) {
    if (holds(p, f)) return false;
  }
  return true;
}

bool ends_in_overload(const SafetyAutomaton& a, const VerifyResult& v) {
  return !v.counterexample.empty() && (v.counterexample.back() & a.props.valuation_of({"overload"})) != 0;
}

std::vector<PointedPlant> items(const SampleSet& s) { return s.items(); }

// Atoms visible in a sub-plant's computation tree.
std::vector<std::string> plant_atoms(const MooreMachine& m) { return m.inputs.unite(m.outputs).names(); }

constexpr Valuation kAsgn1 = 1;

void criterion1(Check& c) {
  const Benchmark early = gen_loadbalancer(LbVariant::BusyEarly);
  artifacts.bench(early);
  Approximation w = make_approximation(early.spec);
  artifacts.aut(w.automaton);
  const ProphecyController u = learn_approx(w, {early.plant});
  artifacts.ucl(w);
  artifacts.upc(u);
  const std::size_t pending = w.automaton.step(w.automaton.initial, w.automaton.props.valuation_of({"task"}));
  const SampleSet& pos = w.positives(pending, kAsgn1);
  const SampleSet& neg = w.negatives(pending, kAsgn1);
  c.require(state_names(pos) == std::set<std::string>{"s0", "s2"}, "positive samples are not {s0, s2}");
  c.require(state_names(neg) == std::set<std::string>{"s1", "s3"}, "negative samples are not {s1, s3}");
  const ctl::Formula nb = ctl::parse_ctl("!busy1", w.automaton.props);
  c.require(separates(pos, neg, nb), "!busy1 does not separate");
  const auto min = oracle::min_separator_size(items(pos), items(neg), plant_atoms(*early.plant), 2);
  c.require(min == std::optional<std::size_t>{ctl::size(nb)}, "!busy1 is not of minimal size");
  const ctl::Formula f = u.prophecy(pending, kAsgn1);
  c.require(ctl::size(f) <= 2, "learned separator is larger than 2");
  c.require(separates(pos, neg, f), "learned formula does not separate");
  const CompositionResult comp = compose(u, *early.plant);
  artifacts.plant(comp.controller);
  c.require(comp.compatible(), "composition is incompatible");
  c.require(verify(w.automaton, comp.controller, *early.plant).ok, "composed controller fails verification");
  c.detail << (c.ok ? "" : "; ") << "learned " << ctl::to_string(f);
}

void criterion2(Check& c) {
  const Benchmark early = gen_loadbalancer(LbVariant::BusyEarly);
  const Benchmark late = gen_loadbalancer(LbVariant::BusyLate);
  artifacts.bench(late);
  Approximation w = make_approximation(early.spec);
  const ProphecyController u = learn_approx(w, {early.plant});
  const CompositionResult first = compose(u, *late.plant);
  artifacts.plant(first.controller);
  const VerifyResult v = verify(w.automaton, first.controller, *late.plant);
  c.require(!v.ok, "round-one controller verifies on the busy-late plant");
  c.require(ends_in_overload(w.automaton, v), "counterexample does not end in overload");

  const SynthesisResult r = synthesize(w, u, late.plant);
  artifacts.ucl(w);
  artifacts.upc(r.prophecies);
  artifacts.plant(r.controller);
  c.require(r.refinements == 1, "expected exactly one refinement");
  const std::size_t pending = w.automaton.step(w.automaton.initial, w.automaton.props.valuation_of({"task"}));
  const SampleSet& pos = w.positives(pending, kAsgn1);
  const SampleSet& neg = w.negatives(pending, kAsgn1);
  const ctl::Formula phi = ctl::parse_ctl("AX(overload -> asgn2)", w.automaton.props);
  c.require(separates(pos, neg, phi), "AX(overload -> asgn2) does not separate the refined samples");
  const auto min =
      oracle::min_separator_size(items(pos), items(neg), plant_atoms(*late.plant), ctl::size(phi) - 1);
  c.require(!min.has_value(), "a smaller separator exists");
  const ctl::Formula f = r.prophecies.prophecy(pending, kAsgn1);
  c.require(ctl::size(f) == ctl::size(phi), "learned separator size differs from the minimum");
  c.require(verify(w.automaton, r.controller, *late.plant).ok, "refined controller fails verification");
  c.detail << (c.ok ? "" : "; ") << "learned " << ctl::to_string(f);
}

// Learns from `train` and composes on every instance; no instance may need a game solve.
void generalize(Check& c, const Benchmark& train, const std::vector<Benchmark>& instances, std::size_t max_size) {
  artifacts.bench(train);
  Approximation w = make_approximation(train.spec);
  artifacts.aut(w.automaton);
  const ProphecyController u = learn_approx(w, {train.plant});
  artifacts.ucl(w);
  artifacts.upc(u);
  if (max_size) c.require(u.max_formula_size() <= max_size, "learned separators exceed size " + std::to_string(max_size));
  for (const auto& inst : instances) {
    artifacts.bench(inst);
    const std::uint64_t solves = game_solve_count();
    const SynthesisResult r = synthesize(w, u, inst.plant);
    artifacts.plant(r.controller);
    const std::string id = inst.plant->name;
    c.require(r.refinements == 0, id + " needed refinement");
    c.require(game_solve_count() == solves, id + " solved a game");
    c.require(verify(w.automaton, r.controller, *inst.plant).ok, id + " fails verification");
  }
  c.detail << (c.ok ? "" : "; ") << "max formula size " << u.max_formula_size();
}

void criterion3(Check& c) {
  std::vector<Benchmark> inst;
  for (int n : {4, 6, 8}) inst.push_back(gen_grid(GridConfig::standard(n)));
  generalize(c, gen_grid(GridConfig::standard(2)), inst, 2);
}

void criterion4(Check& c) {
  std::vector<Benchmark> inst;
  for (int k = 3; k <= 6; ++k) inst.push_back(gen_lily(k));
  generalize(c, gen_lily(2), inst, 0);
}

double median_ms(const std::function<void()>& f, int reps) {
  std::vector<double> t;
  for (int i = 0; i < reps; ++i) {
    const auto t0 = Clock::now();
    f();
    t.push_back(seconds_since(t0) * 1000);
  }
  std::sort(t.begin(), t.end());
  return t[t.size() / 2];
}

void criterion5(Check& c) {
  const Benchmark train = gen_grid(GridConfig::standard(2));
  const Benchmark inst = gen_grid(GridConfig::standard(8));
  Approximation w = make_approximation(train.spec);
  const ProphecyController u = learn_approx(w, {train.plant});
  const std::uint64_t solves = game_solve_count();
  CompositionResult comp = compose(u, *inst.plant);
  c.require(game_solve_count() == solves, "compose solved a game");
  c.require(comp.compatible(), "composition is incompatible");
  artifacts.plant(comp.controller);
  const int reps = 21;
  const double compose_ms = median_ms([&] { comp = compose(u, *inst.plant); }, reps);
  const double full_ms = median_ms(
      [&] {
        const SafetyAutomaton a = ltl_to_dsa(inst.spec.formula, inst.spec.arch);
        const MooreMachine d = synthesize_direct(a, *inst.plant, inst.spec.arch);
        if (d.num_states() == 0) throw InternalError("empty controller");
      },
      reps);
  c.require(game_solve_count() == solves + static_cast<std::uint64_t>(reps), "unexpected game solve count");
  c.require(compose_ms <= full_ms, "compose is slower than full synthesis");
  char buf[96];
  std::snprintf(buf, sizeof buf, "compose %.3f ms vs full synthesis %.3f ms (median of %d)", compose_ms, full_ms, reps);
  c.detail << (c.ok ? "" : "; ") << buf;
}

void criterion6(Check& c) {
  const std::size_t g = testgen::game_mismatches(11, 200, 50);
  const std::size_t k = testgen::ctl_mismatches(23, 200, 20, 6);
  const std::size_t l = testgen::ltl_mismatches(37, 100, 5);
  c.require(g == 0, "game mismatches");
  c.require(k == 0, "CTL mismatches");
  c.require(l == 0, "LTL mismatches");
  c.detail << (c.ok ? "" : "; ") << "mismatches game " << g << ", CTL " << k << ", LTL " << l;
}

void criterion7(Check& c) {
  testgen::PropertyTally t;
  LearnerParams params;
  params.max_size = 10;
  for (std::uint64_t seed = 1; seed <= 100; ++seed) testgen::run_plant_sequence(seed, 3, params, t);
  for (const auto& [name, count] : t.checked) {
    c.require(count > 0, name + " never checked");
    c.require(t.violations.at(name) == 0, name + " violated");
  }
  c.require(t.checked.size() == 8, "missing properties");
  for (const auto& n : t.notes) c.detail << "; " << n;
  c.detail << (c.ok ? "" : "; ") << t.checked.size() << " properties, " << t.total_violations() << " violations";
}

void criterion8(Check& c) {
  std::size_t checked = 0;
  for (const auto& [kind, text] : artifacts.items) {
    std::string again;
    if (kind == "spec") again = serialize_spec(parse_spec(text));
    if (kind == "plant") again = serialize_plant(parse_plant(text));
    if (kind == "aut") again = serialize_aut(parse_aut(text));
    if (kind == "ucl") again = serialize_ucl(parse_ucl(text));
    if (kind == "upc") again = serialize_upc(parse_upc(text));
    c.require(again == text, kind + " artifact changed on round trip");
    ++checked;
  }
  std::set<std::string> kinds;
  for (const auto& a : artifacts.items) kinds.insert(a.first);
  c.require(kinds.size() == 5, "not every artifact kind was produced");
  c.detail << (c.ok ? "" : "; ") << checked << " artifacts";
}

struct Criterion {
  int id;
  const char* name;
  double limit_s;  // 0 for no time limit
  void (*run)(Check&);
};

}  // namespace

int main() {
  const Criterion criteria[] = {
      {1, "load-balancer round one", 1.0, criterion1},
      {2, "load-balancer refinement", 5.0, criterion2},
      {3, "grid generalization", 30.0, criterion3},
      {4, "lily generalization", 30.0, criterion4},
      {5, "compose vs full synthesis", 0, criterion5},
      {6, "oracle suites", 0, criterion6},
      {7, "property suites", 0, criterion7},
      {8, "format round trips", 0, criterion8},
  };
  int failed = 0;
  for (const auto& cr : criteria) {
    Check c;
    const auto t0 = Clock::now();
    try {
      cr.run(c);
    } catch (const std::exception& e) {
      c.require(false, std::string("exception: ") + e.what());
    }
    const double s = seconds_since(t0);
    if (cr.limit_s > 0) c.require(s < cr.limit_s, "time limit exceeded");
    std::printf("%s C%d %s (%.3f s", c.ok ? "PASS" : "FAIL", cr.id, cr.name, s);
    if (cr.limit_s > 0) std::printf(", limit %.0f s", cr.limit_s);
    std::printf("): %s\n", c.detail.str().c_str());
    std::fflush(stdout);
    failed += c.ok ? 0 : 1;
  }
  std::printf("%d of 8 criteria passed\n", 8 - failed);
  return failed == 0 ? 0 : 1;
}
