#include "ucl/game.hpp"

#include "ucl/error.hpp"

namespace ucl {

namespace {

std::atomic<std::uint64_t> g_solves{0};

}  // namespace

SafetyGame build_game(const SafetyAutomaton& a, const MooreMachine& m, const Architecture& arch) {
  const PropSet ap = arch.all();
  if (!(a.props == ap)) throw AlphabetMismatch("automaton alphabet differs from the architecture");
  if (!(m.outputs == arch.plant)) throw AlphabetMismatch("plant '" + m.name + "' outputs differ from the architecture");
  if (!m.inputs.subset_of(arch.env.unite(arch.ctrl))) {
    throw AlphabetMismatch("plant '" + m.name + "' reads propositions it cannot observe");
  }
  SafetyGame g;
  g.alphas = arch.ctrl_valuations();
  if (g.alphas.size() > 64) throw InputWidthExceeded(arch.ctrl.size(), 6);
  g.plant_states = m.num_states();
  g.num_nodes = a.num_states() * m.num_states();
  g.num_alpha = g.alphas.size();
  g.branching = arch.env.valuation_count();

  const Remap ctrl_to_ap(arch.ctrl, ap), env_to_ap(arch.env, ap), out_to_ap(m.outputs, ap);
  const Remap ap_to_in(ap, m.inputs);
  g.succ.resize(g.num_nodes * g.num_alpha * g.branching);
  g.safe.resize(g.num_nodes);
  for (std::size_t q = 0; q < a.num_states(); ++q) {
    for (std::size_t s = 0; s < m.num_states(); ++s) {
      const std::size_t n = g.node(q, s);
      g.safe[n] = a.is_safe(q);
      const Valuation o = out_to_ap(m.label[s]);
      for (std::size_t ai = 0; ai < g.num_alpha; ++ai) {
        const Valuation alpha = ctrl_to_ap(g.alphas[ai]);
        for (Valuation b = 0; b < g.branching; ++b) {
          const Valuation sigma = alpha | env_to_ap(b) | o;
          g.succ[(n * g.num_alpha + ai) * g.branching + b] =
              static_cast<std::uint32_t>(g.node(a.step(q, sigma), m.next(s, ap_to_in(sigma))));
        }
      }
    }
  }
  return g;
}

WinningRegion solve(const SafetyGame& g) {
  g_solves.fetch_add(1, std::memory_order_relaxed);
  const std::size_t n = g.num_nodes, na = g.num_alpha, nb = g.branching;
  if (na > 64) throw InternalError("more than 64 controller choices");

  // Predecessor index over (node, choice) slots, one entry per edge.
  std::vector<std::uint32_t> begin(n + 1, 0);
  for (auto t : g.succ) ++begin[t + 1];
  for (std::size_t v = 0; v < n; ++v) begin[v + 1] += begin[v];
  std::vector<std::uint32_t> pred(g.succ.size());
  {
    std::vector<std::uint32_t> fill(begin.begin(), begin.end() - 1);
    for (std::size_t e = 0; e < g.succ.size(); ++e) pred[fill[g.succ[e]]++] = static_cast<std::uint32_t>(e / nb);
  }

  WinningRegion w;
  w.win.assign(n, 0);
  std::vector<std::uint32_t> bad(n * na, 0);  // successors outside win, per slot
  std::vector<std::uint32_t> good_choices(n, 0);
  for (std::size_t v = 0; v < n; ++v) w.win[v] = g.safe[v];
  for (std::size_t slot = 0; slot < n * na; ++slot) {
    for (std::size_t b = 0; b < nb; ++b) bad[slot] += w.win[g.succ[slot * nb + b]] ? 0 : 1;
  }
  std::vector<std::uint32_t> work;
  for (std::size_t v = 0; v < n; ++v) {
    for (std::size_t a = 0; a < na; ++a) good_choices[v] += bad[v * na + a] == 0 ? 1 : 0;
    if (w.win[v] && good_choices[v] == 0) {
      w.win[v] = 0;
      work.push_back(static_cast<std::uint32_t>(v));
    }
  }
  // Unsafe nodes start outside win and are already counted in `bad`.
  while (!work.empty()) {
    const auto t = work.back();
    work.pop_back();
    for (std::uint32_t i = begin[t]; i < begin[t + 1]; ++i) {
      const std::uint32_t slot = pred[i];
      if (bad[slot]++ != 0) continue;
      const std::uint32_t v = slot / static_cast<std::uint32_t>(na);
      if (--good_choices[v] == 0 && w.win[v]) {
        w.win[v] = 0;
        work.push_back(v);
      }
    }
  }

  w.winning.assign(n, 0);
  for (std::size_t v = 0; v < n; ++v) {
    if (!w.win[v]) continue;
    for (std::size_t a = 0; a < na; ++a) {
      bool ok = true;
      for (std::size_t b = 0; b < nb && ok; ++b) ok = w.win[g.succ[(v * na + a) * nb + b]] != 0;
      if (ok) w.winning[v] |= std::uint64_t{1} << a;
    }
    if (w.winning[v] == 0) throw InternalError("winning node without a winning choice");
  }
  return w;
}

std::vector<Valuation> winning_outputs_at(const WinningRegion& w, const SafetyGame& g, std::size_t q,
                                          std::size_t s) {
  if (g.plant_states == 0 || s >= g.plant_states || g.node(q, s) >= g.num_nodes) throw UnknownNode(q, s);
  std::vector<Valuation> out;
  const std::uint64_t mask = w.winning[g.node(q, s)];
  for (std::size_t a = 0; a < g.num_alpha; ++a) {
    if ((mask >> a) & 1U) out.push_back(g.alphas[a]);
  }
  return out;
}

std::uint64_t game_solve_count() { return g_solves.load(std::memory_order_relaxed); }

}  // namespace ucl
