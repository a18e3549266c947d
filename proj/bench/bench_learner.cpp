// Serial versus OpenMP separator search on fixed sample sets.

#include <benchmark/benchmark.h>

#include <set>

#include "support/random.hpp"
#include "ucl/bench.hpp"
#include "ucl/error.hpp"
#include "ucl/learner.hpp"
#include "ucl/prophecy.hpp"

using namespace ucl;

namespace {

struct Samples {
  std::vector<PointedPlant> pos, neg;
};

// Refined load-balancer samples for (pending, {asgn1}).
Samples load_balancer() {
  Approximation w = make_approximation(gen_loadbalancer(LbVariant::BusyEarly).spec);
  refine(w, gen_loadbalancer(LbVariant::BusyEarly).plant);
  refine(w, gen_loadbalancer(LbVariant::BusyLate).plant);
  const std::size_t pending = w.automaton.step(w.automaton.initial, w.automaton.props.valuation_of({"task"}));
  return {w.positives(pending, 1).items(), w.negatives(pending, 1).items()};
}

// First random split of two small plants whose smallest separator has at least `min_size` nodes.
Samples random_hard(int min_size) {
  testgen::Rng rng(5);
  LearnerParams p;
  p.max_size = 9;
  for (int attempt = 0; attempt < 2000; ++attempt) {
    Samples s;
    std::set<std::uint64_t> pf, nf;
    for (int i = 0; i < 2; ++i) {
      auto m = testgen::plant(rng, "b" + std::to_string(i), {"a"}, PropSet({"o", "p"}), 4, 0.4, 0);
      MooreMachine fixed = m->inputs.empty() ? widen_inputs(*m, PropSet({"a"})) : *m;
      auto w = std::make_shared<const MooreMachine>(std::move(fixed));
      for (std::size_t st = 0; st < w->num_states(); ++st) {
        const PointedPlant pp = sub_plant(w, st);
        const bool positive = testgen::coin(rng);
        (positive ? s.pos : s.neg).push_back(pp);
        (positive ? pf : nf).insert(pp.fingerprint);
      }
    }
    bool clash = false;
    for (auto f : pf) clash = clash || nf.count(f);
    if (clash || s.pos.empty() || s.neg.empty()) continue;
    LearnStats stats;
    try {
      learn_ctl_serial(s.pos, s.neg, p, &stats);
    } catch (const Error&) {
      continue;
    }
    if (stats.size >= min_size) return s;
  }
  throw InternalError("no hard sample set found");
}

const Samples& lb() {
  static const Samples s = load_balancer();
  return s;
}

const Samples& hard() {
  static const Samples s = random_hard(8);
  return s;
}

void BM_LearnSerial(benchmark::State& state, const Samples& (*samples)()) {
  const Samples& s = samples();
  LearnerParams p;
  p.max_size = 9;
  LearnStats stats;
  for (auto _ : state) benchmark::DoNotOptimize(learn_ctl_serial(s.pos, s.neg, p, &stats));
  state.counters["size"] = stats.size;
  state.counters["candidates"] = static_cast<double>(stats.distinct);
}

void BM_LearnParallel(benchmark::State& state, const Samples& (*samples)()) {
  const Samples& s = samples();
  LearnerParams p;
  p.max_size = 9;
  p.threads = static_cast<int>(state.range(0));
  LearnStats stats;
  for (auto _ : state) benchmark::DoNotOptimize(learn_ctl(s.pos, s.neg, p, &stats));
  state.counters["size"] = stats.size;
}

}  // namespace

BENCHMARK_CAPTURE(BM_LearnSerial, load_balancer, lb)->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(BM_LearnParallel, load_balancer, lb)->Arg(1)->Arg(2)->Arg(4)->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(BM_LearnSerial, random_hard, hard)->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(BM_LearnParallel, random_hard, hard)->Arg(1)->Arg(2)->Arg(4)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
