#pragma once

// Randomized plant-sequence checks of the approximation, learning and
// composition contracts, counted per property.

#include <algorithm>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "../oracles/ctl_oracle.hpp"
#include "random.hpp"
#include "ucl/error.hpp"
#include "ucl/game.hpp"
#include "ucl/kripke.hpp"
#include "ucl/prophecy.hpp"
#include "ucl/synthesis.hpp"

namespace testgen {

struct PropertyTally {
  std::map<std::string, std::size_t> checked;
  std::map<std::string, std::size_t> violations;
  std::vector<std::string> notes;  // first few violation descriptions

  void check(const std::string& property, bool ok, const std::string& detail = {}) {
    ++checked[property];
    violations[property];
    if (ok) return;
    ++violations[property];
    if (notes.size() < 20) notes.push_back(property + ": " + detail);
  }
  std::size_t total_violations() const {
    std::size_t n = 0;
    for (const auto& [k, v] : violations) n += v;
    return n;
  }
};

/// Architecture env {e}, ctrl {a, b} mutex, plant {bad, p}.
inline ucl::SpecDecl property_spec() {
  return ucl::parse_spec("spec prop\nenv e\nctrl a b\nplant bad p\nmutex ctrl\nformula G(!bad) & G(e -> X(a | b))\n");
}

/// Truth at the sub-plant, with the plant widened to read every controller and environment bit.
inline bool holds_at(const ucl::PointedPlant& p, const ucl::ctl::Formula& f) {
  auto wide = std::make_shared<const ucl::MooreMachine>(ucl::widen_inputs(*p.machine, ucl::PropSet({"a", "b", "e"})));
  const ucl::Kripke k = ucl::kripke_view(ucl::sub_plant(wide, p.point));
  return oracle::ctl_sat(k, f)[k.root()] != 0;
}

using FingerprintSets = std::map<ucl::SampleKey, std::set<std::uint64_t>>;

inline FingerprintSets fingerprints(const std::map<ucl::SampleKey, ucl::SampleSet>& m) {
  FingerprintSets out;
  for (const auto& [k, set] : m) {
    for (const auto& p : set.items()) out[k].insert(p.fingerprint);
  }
  return out;
}

inline bool includes(const FingerprintSets& big, const FingerprintSets& small) {
  for (const auto& [k, s] : small) {
    auto it = big.find(k);
    if (it == big.end() || !std::includes(it->second.begin(), it->second.end(), s.begin(), s.end())) return false;
  }
  return true;
}

/// One sequence of `length` random plants (<= 6 states, <= 2 input bits).
inline void run_plant_sequence(std::uint64_t seed, std::size_t length, const ucl::LearnerParams& params,
                               PropertyTally& t) {
  using namespace ucl;
  Rng rng(seed);
  const SpecDecl spec = property_spec();
  const Architecture& arch = spec.arch;
  Approximation w = make_approximation(spec);
  ProphecyController u = learn_approx(w, {}, params);
  const std::string tag = "seed " + std::to_string(seed);

  for (std::size_t i = 0; i < length; ++i) {
    const auto m = plant(rng, "r" + std::to_string(seed) + "_" + std::to_string(i), {"a", "b", "e"}, arch.plant, 6,
                         0.3, 0);
    const std::string where = tag + " plant " + std::to_string(i);

    // Synthesis against the current prophecies, compared with direct game solving.
    bool direct_ok = false;
    try {
      const MooreMachine d = synthesize_direct(w.automaton, *m, arch);
      direct_ok = true;
      t.check("synthesize-correctness", verify(w.automaton, d, *m).ok, where + ": direct controller fails");
    } catch (const Unrealizable&) {
    }
    bool synth_ok = false;
    try {
      const SynthesisResult r = synthesize(w, u, m, params);
      synth_ok = true;
      u = r.prophecies;
      t.check("synthesize-correctness", verify(w.automaton, r.controller, *m).ok, where + ": controller fails");
    } catch (const Unrealizable&) {
    } catch (const Error& e) {
      t.check("synthesize-correctness", false, where + ": " + e.what());
      continue;
    }
    t.check("oracle-equivalence", synth_ok == direct_ok, where);

    // Refinement contracts.
    const FingerprintSets pos_before = fingerprints(w.pos), neg_before = fingerprints(w.neg);
    try {
      refine(w, m);
    } catch (const Error& e) {
      t.check("refinement-monotonicity", false, where + ": " + e.what());
      continue;
    }
    t.check("refinement-monotonicity",
            includes(fingerprints(w.pos), pos_before) && includes(fingerprints(w.neg), neg_before), where);

    const SafetyGame g = build_game(w.automaton, *m, arch);
    const WinningRegion win = solve(g);
    bool exact = true;
    for (std::size_t q = 0; q < w.automaton.num_states(); ++q) {
      for (std::size_t s = 0; s < m->num_states(); ++s) {
        const PointedPlant p = sub_plant(m, s);
        for (std::size_t a = 0; a < g.num_alpha; ++a) {
          const bool winning = (win.winning[g.node(q, s)] >> a) & 1U;
          const bool in_pos = w.positives(q, g.alphas[a]).find(p.fingerprint) != nullptr;
          const bool in_neg = w.negatives(q, g.alphas[a]).find(p.fingerprint) != nullptr;
          exact = exact && in_pos == winning && in_neg == !winning;
        }
      }
    }
    t.check("exactness-on-refined-plants", exact, where);

    try {
      u = learn_approx(w, {}, params);
    } catch (const Error& e) {
      t.check("sandwich", false, where + ": " + e.what());
      continue;
    }
    bool sandwich = true;
    for (const auto& [k, set] : w.pos) {
      for (const auto& p : set.items()) sandwich = sandwich && holds_at(p, u.prophecy(k.q, k.alpha));
    }
    for (const auto& [k, set] : w.neg) {
      for (const auto& p : set.items()) sandwich = sandwich && !holds_at(p, u.prophecy(k.q, k.alpha));
    }
    t.check("sandwich", sandwich, where);

    bool permissive = true;
    for (std::size_t q = 0; q < w.automaton.num_states(); ++q) {
      for (std::size_t s = 0; s < m->num_states(); ++s) {
        for (Valuation alpha : winning_outputs_at(win, g, q, s)) {
          permissive = permissive && holds_at(sub_plant(m, s), u.prophecy(q, alpha));
        }
      }
    }
    t.check("most-permissiveness", permissive, where);

    const CompositionResult c = compose(u, *m);
    bool consistent = true;
    std::set<std::pair<std::uint32_t, std::uint32_t>> dead(c.incompatible.begin(), c.incompatible.end());
    for (std::size_t n = 0; n < c.nodes.size(); ++n) {
      const auto [q, s] = c.nodes[n];
      if (dead.count(c.nodes[n])) continue;
      consistent = consistent && holds_at(sub_plant(m, s), u.prophecy(q, c.controller.label[n]));
    }
    t.check("consistency", consistent, where);
    if (win.win[g.node(w.automaton.initial, m->initial)]) {
      t.check("synthesize-correctness", c.compatible() && verify(w.automaton, c.controller, *m).ok,
              where + ": recomposition on a refined plant fails");
    }

    // Forward completeness: wherever some prophecy holds, composition started there never dead-ends.
    bool forward = true;
    for (std::size_t q = 0; q < w.automaton.num_states(); ++q) {
      if (!w.automaton.is_safe(q)) continue;
      for (std::size_t s = 0; s < m->num_states(); ++s) {
        bool enabled = false;
        for (Valuation alpha : arch.ctrl_valuations()) enabled = enabled || holds_at(sub_plant(m, s), u.prophecy(q, alpha));
        if (!enabled) continue;
        ProphecyController from = u;
        from.automaton.initial = q;
        MooreMachine rooted = *m;
        rooted.initial = s;
        forward = forward && compose(from, rooted).compatible();
      }
    }
    t.check("forward-completeness", forward, where);
  }
}

}  // namespace testgen
