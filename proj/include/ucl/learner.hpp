#pragma once

#include <optional>
#include <vector>

#include "ucl/ctl.hpp"
#include "ucl/plant.hpp"

namespace ucl {

struct LearnerParams {
  int max_size = 8;
  std::vector<ctl::Op> operators{ctl::kEnumerationOrder.begin(), ctl::kEnumerationOrder.end()};
  /// Atoms offered to the learner; defaults to the sample plants' inputs and outputs.
  std::optional<PropSet> atoms;
  /// OpenMP threads for candidate evaluation; 0 keeps the runtime default.
  int threads = 0;
  /// Upper bound on distinct candidates kept across all sizes.
  std::size_t max_candidates = 2'000'000;

  void validate() const;  // throws InvalidConfig
};

struct LearnStats {
  std::size_t generated = 0;
  std::size_t distinct = 0;
  int size = 0;
};

/// Smallest formula (first in enumeration order) true at every positive root and false at every
/// negative root. Throws NoSeparator or Inconsistent.
ctl::Formula learn_ctl(const std::vector<PointedPlant>& pos, const std::vector<PointedPlant>& neg,
                       const LearnerParams& params = {}, LearnStats* stats = nullptr);

/// Single-threaded reference with the same contract and result.
ctl::Formula learn_ctl_serial(const std::vector<PointedPlant>& pos, const std::vector<PointedPlant>& neg,
                              const LearnerParams& params = {}, LearnStats* stats = nullptr);

}  // namespace ucl
