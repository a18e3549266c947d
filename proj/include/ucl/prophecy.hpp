#pragma once

#include <compare>
#include <map>
#include <memory>
#include <string>
#include <unordered_map>
#include <vector>

#include "ucl/automaton.hpp"
#include "ucl/ctl.hpp"
#include "ucl/learner.hpp"
#include "ucl/plant.hpp"
#include "ucl/spec.hpp"

namespace ucl {

/// (automaton state, controller valuation over arch.ctrl).
struct SampleKey {
  std::uint32_t q = 0;
  Valuation alpha = 0;
  friend auto operator<=>(const SampleKey&, const SampleKey&) = default;
};

/// Pointed plants deduplicated by fingerprint; insertion order is kept.
class SampleSet {
 public:
  /// False if a sample with the same fingerprint is already present.
  bool insert(PointedPlant p);
  const PointedPlant* find(std::uint64_t fingerprint) const;
  const std::vector<PointedPlant>& items() const noexcept { return items_; }
  std::size_t size() const noexcept { return items_.size(); }
  bool empty() const noexcept { return items_.empty(); }

 private:
  std::vector<PointedPlant> items_;
  std::unordered_map<std::uint64_t, std::size_t> index_;
};

struct Approximation {
  std::string name = "approx";
  Architecture arch;
  SafetyAutomaton automaton;
  std::map<SampleKey, SampleSet> pos;
  std::map<SampleKey, SampleSet> neg;

  struct Learned {
    std::size_t pos_count = 0;
    std::size_t neg_count = 0;
    ctl::Formula formula;
  };
  /// What learn_approx last produced per key; sample sets only grow, so sizes detect change.
  std::map<SampleKey, Learned> learned;

  const SampleSet& positives(std::size_t q, Valuation alpha) const;
  const SampleSet& negatives(std::size_t q, Valuation alpha) const;
};

Approximation make_approximation(const SpecDecl& spec, std::size_t state_cap = kDefaultStateCap);
Approximation make_approximation(SafetyAutomaton a, Architecture arch, std::string name);

struct RefineReport {
  bool initial_winning = false;
  std::size_t added_pos = 0;
  std::size_t added_neg = 0;
};

/// Adds M(s) to pos(q, a) when a is winning at (q, s), else to neg(q, a), for all q, s, a.
/// Throws ConflictingSample when a new sample is bisimilar to one on the opposite side.
RefineReport refine(Approximation& w, std::shared_ptr<const MooreMachine> m);

struct ProphecyController {
  std::string name = "upc";
  Architecture arch;
  SafetyAutomaton automaton;
  std::map<SampleKey, ctl::Formula> kappa;

  /// false for unknown keys.
  const ctl::Formula& prophecy(std::size_t q, Valuation alpha) const;
  std::size_t max_formula_size() const;
};

/// Refines with each plant, then learns every (q, a) whose samples changed since the last call.
ProphecyController learn_approx(Approximation& w, const std::vector<std::shared_ptr<const MooreMachine>>& plants,
                                const LearnerParams& params = {});

std::string serialize_upc(const ProphecyController& u);
ProphecyController parse_upc(std::string_view input);

std::string serialize_ucl(const Approximation& w);
Approximation parse_ucl(std::string_view input);

}  // namespace ucl
