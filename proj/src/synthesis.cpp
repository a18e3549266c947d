#include "ucl/synthesis.hpp"

#include <functional>
#include <map>
#include <optional>
#include <unordered_map>

#include "ucl/error.hpp"
#include "ucl/game.hpp"
#include "ucl/kripke.hpp"
#include "ucl/mc.hpp"

namespace ucl {

namespace {

using Choice = std::function<std::optional<Valuation>(std::size_t q, std::size_t s)>;

// BFS over (q, s) from (q0, s0). Controller inputs whose plant part disagrees with the
// current plant label cannot occur and are routed like the consistent input.
CompositionResult explore(const SafetyAutomaton& a, const MooreMachine& m, const Architecture& arch,
                          const std::string& name, const Choice& choose) {
  const PropSet ap = arch.all();
  const PropSet in_c = arch.env.unite(arch.plant);
  if (in_c.size() > kMaxInputs) throw InputWidthExceeded(in_c.size(), kMaxInputs);
  const Remap ctrl_to_ap(arch.ctrl, ap), env_to_ap(arch.env, ap), out_to_ap(m.outputs, ap);
  const Remap ap_to_in(ap, m.inputs), in_c_to_env(in_c, arch.env);
  const std::vector<Valuation> alphas = arch.ctrl_valuations();

  CompositionResult r;
  MooreMachine& c = r.controller;
  c.name = name;
  c.role = Role::Controller;
  c.inputs = in_c;
  c.outputs = arch.ctrl;
  const std::size_t width = c.input_count();

  std::unordered_map<std::uint64_t, std::uint32_t> index;
  auto intern = [&](std::size_t q, std::size_t s) -> std::uint32_t {
    const std::uint64_t key = (static_cast<std::uint64_t>(q) << 32) | s;
    auto [it, inserted] = index.emplace(key, static_cast<std::uint32_t>(r.nodes.size()));
    if (inserted) r.nodes.emplace_back(static_cast<std::uint32_t>(q), static_cast<std::uint32_t>(s));
    return it->second;
  };
  intern(a.initial, m.initial);
  for (std::size_t i = 0; i < r.nodes.size(); ++i) {
    const auto [q, s] = r.nodes[i];
    const std::optional<Valuation> alpha = choose(q, s);
    std::vector<std::uint32_t> row(width, static_cast<std::uint32_t>(i));
    if (alpha) {
      std::vector<std::uint32_t> by_env(arch.env.valuation_count());
      const Valuation base = ctrl_to_ap(*alpha) | out_to_ap(m.label[s]);
      for (Valuation e = 0; e < by_env.size(); ++e) {
        const Valuation sigma = base | env_to_ap(e);
        by_env[e] = intern(a.step(q, sigma), m.next(s, ap_to_in(sigma)));
      }
      for (Valuation v = 0; v < width; ++v) row[v] = by_env[in_c_to_env(v)];
    } else {
      r.incompatible.emplace_back(q, s);
    }
    c.tau.insert(c.tau.end(), row.begin(), row.end());
    c.label.push_back(alpha ? *alpha : alphas.front());
  }
  for (std::size_t i = 0; i < r.nodes.size(); ++i) c.state_names.push_back("n" + std::to_string(i));
  c.initial = 0;
  return r;
}

}  // namespace

CompositionResult compose(const ProphecyController& u, const MooreMachine& m) {
  const Architecture& arch = u.arch;
  if (!(m.outputs == arch.plant)) throw AlphabetMismatch("plant '" + m.name + "' outputs differ from the architecture");
  if (!m.inputs.subset_of(arch.env.unite(arch.ctrl))) {
    throw AlphabetMismatch("plant '" + m.name + "' reads propositions it cannot observe");
  }
  const std::vector<Valuation> alphas = arch.ctrl_valuations();
  // Prophecies may mention controller or environment bits this plant ignores.
  PropSet inputs = m.inputs;
  const PropSet readable = arch.env.unite(arch.ctrl);
  for (const auto& [k, f] : u.kappa) {
    for (const auto& a : ctl::atoms(f)) {
      if (readable.contains(a)) inputs = inputs.unite(PropSet({a}));
    }
  }
  std::optional<Kripke> model;
  std::map<const ctl::Node*, Bitset> sat;
  auto holds = [&](const ctl::Formula& f, std::size_t s) {
    if (f->op == ctl::Op::True) return true;
    if (f->op == ctl::Op::False) return false;
    if (!model) model = plant_model(inputs == m.inputs ? m : widen_inputs(m, inputs));
    auto it = sat.find(f.get());
    if (it == sat.end()) it = sat.emplace(f.get(), sat_set(*model, f)).first;
    return it->second.test(model->roots[s]);
  };
  auto choose = [&](std::size_t q, std::size_t s) -> std::optional<Valuation> {
    for (Valuation alpha : alphas) {
      if (holds(u.prophecy(q, alpha), s)) return alpha;
    }
    return std::nullopt;
  };
  return explore(u.automaton, m, arch, "ctrl_" + m.name, choose);
}

VerifyResult verify(const SafetyAutomaton& a, const MooreMachine& ctrl, const MooreMachine& m) {
  const MooreMachine closed = parallel_compose(ctrl, m);
  const ProductGraph g = product_with_machine(a, closed);
  VerifyResult r;
  // Nodes are discovered in BFS order, so tracking the first parent gives shortest traces.
  std::vector<std::int64_t> parent(g.nodes.size(), -1);
  std::vector<Valuation> via(g.nodes.size(), 0);
  std::vector<char> seen(g.nodes.size(), 0);
  std::vector<std::uint32_t> queue{0};
  seen[0] = 1;
  for (std::size_t head = 0; head < queue.size(); ++head) {
    const std::uint32_t n = queue[head];
    if (!g.safe[n]) {
      r.ok = false;
      for (std::int64_t v = n; parent[v] >= 0; v = parent[v]) r.counterexample.push_back(via[v]);
      std::reverse(r.counterexample.begin(), r.counterexample.end());
      return r;
    }
    for (const auto& e : g.edges[n]) {
      if (seen[e.target]) continue;
      seen[e.target] = 1;
      parent[e.target] = n;
      via[e.target] = e.letter;
      queue.push_back(e.target);
    }
  }
  return r;
}

std::string format_trace(const PropSet& props, const std::vector<Valuation>& trace) {
  std::string out;
  for (Valuation v : trace) out += props.format(v) + "\n";
  return out;
}

SynthesisResult synthesize(Approximation& w, const ProphecyController& u, std::shared_ptr<const MooreMachine> m,
                           const LearnerParams& params) {
  SynthesisResult r;
  {
    CompositionResult c = compose(u, *m);
    if (c.compatible() && verify(u.automaton, c.controller, *m).ok) {
      r.controller = std::move(c.controller);
      r.prophecies = u;
      return r;
    }
  }
  if (!refine(w, m).initial_winning) throw Unrealizable(m->name);
  r.prophecies = learn_approx(w, {}, params);
  r.refinements = 1;
  CompositionResult c = compose(r.prophecies, *m);
  if (!c.compatible()) throw InternalError("composition after refinement is incompatible");
  if (!verify(r.prophecies.automaton, c.controller, *m).ok) {
    throw InternalError("controller after refinement fails verification");
  }
  r.controller = std::move(c.controller);
  return r;
}

MooreMachine synthesize_direct(const SafetyAutomaton& a, const MooreMachine& m, const Architecture& arch) {
  const SafetyGame g = build_game(a, m, arch);
  const WinningRegion win = solve(g);
  if (!win.win[g.node(a.initial, m.initial)]) throw Unrealizable(m.name);
  auto choose = [&](std::size_t q, std::size_t s) -> std::optional<Valuation> {
    const std::uint64_t mask = win.winning[g.node(q, s)];
    if (mask == 0) return std::nullopt;
    return g.alphas[static_cast<std::size_t>(std::countr_zero(mask))];
  };
  CompositionResult c = explore(a, m, arch, "direct_" + m.name, choose);
  if (!c.compatible()) throw InternalError("direct synthesis reached a losing node");
  return std::move(c.controller);
}

}  // namespace ucl
