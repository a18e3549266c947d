#include "ucl/bench.hpp"

#include <chrono>
#include <cstdio>
#include <functional>

#include "ucl/automaton.hpp"
#include "ucl/error.hpp"
#include "ucl/prophecy.hpp"
#include "ucl/synthesis.hpp"

namespace ucl {

namespace {

std::shared_ptr<const MooreMachine> finish(MooreMachine m) {
  m.check();
  return std::make_shared<const MooreMachine>(std::move(m));
}

// Fills tau from a next-state function over input valuations.
void fill(MooreMachine& m, const std::function<std::size_t(std::size_t, Valuation)>& next) {
  m.tau.clear();
  for (std::size_t s = 0; s < m.num_states(); ++s) {
    for (Valuation v = 0; v < m.input_count(); ++v) m.tau.push_back(static_cast<std::uint32_t>(next(s, v)));
  }
}

}  // namespace

Benchmark gen_loadbalancer(LbVariant variant) {
  const bool early = variant == LbVariant::BusyEarly;
  MooreMachine m;
  m.name = early ? "lb_busy_early" : "lb_busy_late";
  m.inputs = PropSet({"asgn1", "asgn2"});
  m.outputs = PropSet({"busy1", "busy2", "overload"});
  m.state_names = {"s0", "s1", "s2", "s3"};
  const Valuation busy1 = 1, busy2 = 2, overload = 4;
  m.label = {0, early ? busy1 : 0, early ? busy2 : 0, busy1 | busy2 | overload};
  const Valuation a1 = 1, a2 = 2;
  fill(m, [&](std::size_t s, Valuation v) -> std::size_t {
    switch (s) {
      case 0: return v == a1 ? 1 : v == a2 ? 2 : 0;
      case 1: return v == a1 ? 3 : v == a2 ? 2 : 0;
      case 2: return v == a2 ? 3 : v == a1 ? 1 : 0;
      default: return 3;
    }
  });
  return {finish(std::move(m)),
          parse_spec("spec lb\nenv task\nctrl asgn1 asgn2\nplant busy1 busy2 overload\nmutex ctrl\n"
                     "formula G(task -> X(asgn1 | asgn2)) & G(!overload)\n")};
}

void GridConfig::validate() const {
  if (n < 2 || n > 64) throw InvalidConfig("grid side must be between 2 and 64");
  auto inside = [&](const std::pair<int, int>& c) { return c.first >= 0 && c.second >= 0 && c.first < n && c.second < n; };
  if (!inside(start)) throw InvalidConfig("grid start lies outside the grid");
  for (const auto& o : obstacles) {
    if (!inside(o)) throw InvalidConfig("grid obstacle lies outside the grid");
  }
  if (obstacles.count(start)) throw InvalidConfig("grid start is an obstacle");
}

GridConfig GridConfig::standard(int n) {
  GridConfig cfg;
  cfg.n = n;
  for (int r = 0; r < n; ++r) {
    for (int c = 0; c < n; ++c) {
      if (r % 3 == 1 && c % 3 == 1) cfg.obstacles.insert({r, c});
    }
  }
  return cfg;
}

Benchmark gen_grid(const GridConfig& cfg) {
  cfg.validate();
  MooreMachine m;
  m.name = "grid_n" + std::to_string(cfg.n);
  // Bit order of the sorted names.
  m.inputs = PropSet({"down", "left", "right", "up"});
  m.outputs = PropSet({"collision", "wall_down", "wall_left", "wall_right", "wall_up"});
  const int dr[4] = {1, 0, 0, -1}, dc[4] = {0, -1, 1, 0};
  std::vector<std::pair<int, int>> cells;
  std::vector<int> id(static_cast<std::size_t>(cfg.n * cfg.n), -1);
  for (int r = 0; r < cfg.n; ++r) {
    for (int c = 0; c < cfg.n; ++c) {
      if (cfg.obstacles.count({r, c})) continue;
      id[static_cast<std::size_t>(r * cfg.n + c)] = static_cast<int>(cells.size());
      cells.emplace_back(r, c);
      m.state_names.push_back("c" + std::to_string(r) + "_" + std::to_string(c));
    }
  }
  const std::size_t crash = cells.size();
  m.state_names.push_back("crash");
  auto target = [&](std::size_t s, int d) -> std::size_t {
    const int r = cells[s].first + dr[d], c = cells[s].second + dc[d];
    if (r < 0 || c < 0 || r >= cfg.n || c >= cfg.n) return crash;
    const int t = id[static_cast<std::size_t>(r * cfg.n + c)];
    return t < 0 ? crash : static_cast<std::size_t>(t);
  };
  for (std::size_t s = 0; s < cells.size(); ++s) {
    Valuation l = 0;
    for (int d = 0; d < 4; ++d) {
      if (target(s, d) == crash) l |= Valuation{2} << d;
    }
    m.label.push_back(l);
  }
  m.label.push_back(m.outputs.full_mask());
  m.initial = static_cast<std::size_t>(id[static_cast<std::size_t>(cfg.start.first * cfg.n + cfg.start.second)]);
  fill(m, [&](std::size_t s, Valuation v) -> std::size_t {
    if (s == crash) return crash;
    // No move, or several directions at once: stay.
    if (v == 0 || (v & (v - 1)) != 0) return s;
    return target(s, std::countr_zero(v));
  });
  return {finish(std::move(m)), parse_spec("spec grid\nenv\nctrl down left right up\n"
                                           "plant collision wall_down wall_left wall_right wall_up\nmutex ctrl\n"
                                           "formula G(!collision)\n")};
}

Benchmark gen_lily(int k) {
  if (k < 1 || k > 64) throw InvalidConfig("lily parameter must be between 1 and 64");
  MooreMachine m;
  m.name = "lily_k" + std::to_string(k);
  m.inputs = PropSet({"request"});
  m.outputs = PropSet({"cooling", "ready"});
  m.state_names.push_back("ready");
  m.label.push_back(2);
  for (int i = 1; i < k; ++i) {
    m.state_names.push_back("cool" + std::to_string(i));
    m.label.push_back(1);
  }
  const std::size_t n = m.state_names.size();
  fill(m, [&](std::size_t s, Valuation v) -> std::size_t {
    if (s == 0) return v != 0 && n > 1 ? 1 : 0;
    return (s + 1) % n;
  });
  return {finish(std::move(m)),
          parse_spec("spec lily\nenv request\nctrl cancel grant\nplant cooling ready\nmutex ctrl\n"
                     "formula G(request -> X(grant | cancel | X(grant | cancel | X(grant | cancel)))) & "
                     "G(grant -> X !grant)\n")};
}

std::string BenchReport::csv() const {
  std::string out = std::string(kBenchCsvHeader) + "\n";
  char ms[32];
  for (const auto& r : rows) {
    std::snprintf(ms, sizeof ms, "%.3f", r.ms);
    out += r.bench + "," + r.phase + "," + ms + "," + r.result + "," + std::to_string(r.ctrl_states) + "," +
           std::to_string(r.max_formula_size) + "\n";
  }
  return out;
}

namespace {

template <class F>
double timed(F&& f) {
  const auto t0 = std::chrono::steady_clock::now();
  f();
  return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
}

void run_instances(BenchReport& report, const Benchmark& train, const std::vector<Benchmark>& instances,
                   const LearnerParams& params) {
  Approximation w = make_approximation(train.spec);
  ProphecyController u;
  const double learn_ms = timed([&] { u = learn_approx(w, {train.plant}, params); });
  report.rows.push_back({train.plant->name, "learn", learn_ms, "ok", 0, u.max_formula_size()});
  for (const auto& inst : instances) {
    const std::string id = inst.plant->name;
    CompositionResult c;
    const double compose_ms = timed([&] { c = compose(u, *inst.plant); });
    report.rows.push_back({id, "compose", compose_ms, c.compatible() ? "ok" : "failed", c.controller.num_states(),
                           u.max_formula_size()});
    VerifyResult v;
    const double verify_ms = timed([&] { v = verify(u.automaton, c.controller, *inst.plant); });
    report.rows.push_back({id, "verify", verify_ms, v.ok ? "ok" : "failed", c.controller.num_states(),
                           u.max_formula_size()});
    if (!c.compatible() || !v.ok) {
      std::string result = "refined";
      std::size_t states = 0;
      const double refine_ms = timed([&] {
        try {
          SynthesisResult r = synthesize(w, u, inst.plant, params);
          u = std::move(r.prophecies);
          states = r.controller.num_states();
        } catch (const Unrealizable&) {
          result = "unrealizable";
        }
      });
      report.rows.push_back({id, "refine", refine_ms, result, states, u.max_formula_size()});
    }
    std::string result = "ok";
    std::size_t states = 0;
    const double full_ms = timed([&] {
      try {
        const SafetyAutomaton a = ltl_to_dsa(inst.spec.formula, inst.spec.arch);
        states = synthesize_direct(a, *inst.plant, inst.spec.arch).num_states();
      } catch (const Unrealizable&) {
        result = "unrealizable";
      }
    });
    report.rows.push_back({id, "full-synth", full_ms, result, states, 0});
  }
}

}  // namespace

BenchReport run_bench(const std::string& suite, int max_param, const LearnerParams& params) {
  BenchReport report;
  std::vector<Benchmark> instances;
  if (suite == "grid") {
    if (max_param > 16) throw InvalidConfig("grid suite supports n <= 16");
    for (int n = 2; n <= max_param; ++n) instances.push_back(gen_grid(GridConfig::standard(n)));
    if (!instances.empty()) run_instances(report, instances.front(), instances, params);
  } else if (suite == "lily") {
    if (max_param > 8) throw InvalidConfig("lily suite supports k <= 8");
    for (int k = 2; k <= max_param; ++k) instances.push_back(gen_lily(k));
    if (!instances.empty()) run_instances(report, instances.front(), instances, params);
  } else if (suite == "loadbalancer") {
    instances = {gen_loadbalancer(LbVariant::BusyEarly), gen_loadbalancer(LbVariant::BusyLate)};
    run_instances(report, instances.front(), instances, params);
  } else {
    throw InvalidConfig("unknown bench suite '" + suite + "'");
  }
  return report;
}

}  // namespace ucl
