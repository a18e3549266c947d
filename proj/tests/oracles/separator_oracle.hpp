#pragma once

// Exhaustive CTL separator search without any pruning: every syntax tree up to
// the given size is built and checked on every sample with the unrolling oracle.

#include <optional>
#include <string>
#include <vector>

#include "ctl_oracle.hpp"
#include "ucl/kripke.hpp"
#include "ucl/plant.hpp"

namespace oracle {

inline bool separates(const ucl::ctl::Formula& f, const std::vector<ucl::Kripke>& pos,
                      const std::vector<ucl::Kripke>& neg) {
  for (const auto& k : pos) {
    if (!ctl_sat(k, f)[k.root()]) return false;
  }
  for (const auto& k : neg) {
    if (ctl_sat(k, f)[k.root()]) return false;
  }
  return true;
}

/// Smallest size <= max_size admitting a separator over `atoms`, if any.
inline std::optional<std::size_t> min_separator_size(const std::vector<ucl::PointedPlant>& pos,
                                                     const std::vector<ucl::PointedPlant>& neg,
                                                     const std::vector<std::string>& atoms, std::size_t max_size) {
  using namespace ucl::ctl;
  std::vector<ucl::Kripke> kp, kn;
  for (const auto& p : pos) kp.push_back(ucl::kripke_view(p));
  for (const auto& p : neg) kn.push_back(ucl::kripke_view(p));
  const Op unary_ops[] = {Op::Not, Op::AX, Op::EX, Op::AF, Op::EF, Op::AG, Op::EG};
  const Op binary_ops[] = {Op::And, Op::Or, Op::Implies, Op::AU, Op::EU};
  std::vector<std::vector<Formula>> level(max_size + 1);
  for (std::size_t n = 1; n <= max_size; ++n) {
    auto& cur = level[n];
    if (n == 1) {
      for (const auto& a : atoms) cur.push_back(atom(a));
      cur.push_back(make_true());
      cur.push_back(make_false());
    } else {
      for (Op op : unary_ops) {
        for (const auto& f : level[n - 1]) cur.push_back(unary(op, f));
      }
      for (std::size_t ls = 1; ls + 1 < n; ++ls) {
        for (Op op : binary_ops) {
          for (const auto& l : level[ls]) {
            for (const auto& r : level[n - 1 - ls]) cur.push_back(binary(op, l, r));
          }
        }
      }
    }
    for (const auto& f : cur) {
      if (separates(f, kp, kn)) return n;
    }
  }
  return std::nullopt;
}

}  // namespace oracle
