#pragma once

#include <memory>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "ucl/learner.hpp"
#include "ucl/moore.hpp"
#include "ucl/spec.hpp"

namespace ucl {

struct Benchmark {
  std::shared_ptr<const MooreMachine> plant;
  SpecDecl spec;
};

enum class LbVariant { BusyEarly, BusyLate };

/// Two-CPU load balancer; busy-early signals occupancy, busy-late only signals overload.
Benchmark gen_loadbalancer(LbVariant variant);

struct GridConfig {
  int n = 2;
  std::set<std::pair<int, int>> obstacles;
  std::pair<int, int> start{0, 0};

  void validate() const;  // throws InvalidConfig
  /// Side n, obstacles at every cell with row % 3 == 1 and col % 3 == 1, start (0, 0).
  static GridConfig standard(int n);
};

/// Robot on an n x n grid with wall sensors; moving into a wall or obstacle crashes.
Benchmark gen_grid(const GridConfig& cfg);

/// Request/grant/cancel protocol; the plant is a k-state cooldown counter over requests.
Benchmark gen_lily(int k);

struct BenchRow {
  std::string bench;
  std::string phase;  // learn, compose, verify, refine, full-synth
  double ms = 0;
  std::string result;  // ok, failed, refined, unrealizable
  std::size_t ctrl_states = 0;
  std::size_t max_formula_size = 0;
};

struct BenchReport {
  std::vector<BenchRow> rows;
  std::string csv() const;
};

inline constexpr const char* kBenchCsvHeader = "bench,phase,ms,result,ctrl_states,max_formula_size";

/// Suites: grid (n = 2..max_param, max 16), lily (k = 2..max_param, max 8), loadbalancer.
/// Throws InvalidConfig for unknown suites or out-of-range parameters.
BenchReport run_bench(const std::string& suite, int max_param, const LearnerParams& params = {});

}  // namespace ucl
