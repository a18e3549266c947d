#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "ucl/plant.hpp"
#include "ucl/props.hpp"

namespace ucl {

/// Explicit Kripke structure in CSR form with labels over `props`.
struct Kripke {
  PropSet props;
  std::vector<Valuation> label;
  std::vector<std::uint32_t> succ_begin{0};
  std::vector<std::uint32_t> succ;
  std::vector<std::uint32_t> pred_begin;
  std::vector<std::uint32_t> pred;
  std::vector<std::uint32_t> roots;

  std::size_t size() const noexcept { return label.size(); }
  std::span<const std::uint32_t> successors(std::size_t n) const {
    return {succ.data() + succ_begin[n], succ.data() + succ_begin[n + 1]};
  }
  std::span<const std::uint32_t> predecessors(std::size_t n) const {
    return {pred.data() + pred_begin[n], pred.data() + pred_begin[n + 1]};
  }
  std::size_t root() const { return roots.front(); }

  /// Appends a node; successors are given later with add_successors in node order.
  std::uint32_t add_node(Valuation l);
  void add_successors(std::span<const std::uint32_t> targets);
  /// Builds the predecessor index and checks totality; throws InternalError on dead ends.
  void finalize();
};

/// Apply `p` at root 0; inner nodes (beta, s) for every s reachable from the point.
Kripke kripke_view(const PointedPlant& p);

/// One root per plant state (roots[s]), sharing the inner nodes (beta, s) of the whole machine.
/// The truth of a formula at roots[s] equals its truth at the root of kripke_view(sub_plant(m, s)).
Kripke plant_model(const MooreMachine& m);

/// Disjoint union; roots are concatenated in argument order. Props must agree.
Kripke disjoint_union(const std::vector<const Kripke*>& parts);

}  // namespace ucl
