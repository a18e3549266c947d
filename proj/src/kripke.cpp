#include "ucl/kripke.hpp"

#include "ucl/error.hpp"

namespace ucl {

std::uint32_t Kripke::add_node(Valuation l) {
  label.push_back(l);
  return static_cast<std::uint32_t>(label.size() - 1);
}

void Kripke::add_successors(std::span<const std::uint32_t> targets) {
  succ.insert(succ.end(), targets.begin(), targets.end());
  succ_begin.push_back(static_cast<std::uint32_t>(succ.size()));
}

void Kripke::finalize() {
  const std::size_t n = size();
  if (succ_begin.size() != n + 1) throw InternalError("Kripke structure: successor lists incomplete");
  pred_begin.assign(n + 1, 0);
  for (std::size_t v = 0; v < n; ++v) {
    if (succ_begin[v] == succ_begin[v + 1]) throw InternalError("Kripke structure: node without successor");
    for (auto t : successors(v)) {
      if (t >= n) throw InternalError("Kripke structure: successor out of range");
      ++pred_begin[t + 1];
    }
  }
  for (std::size_t v = 0; v < n; ++v) pred_begin[v + 1] += pred_begin[v];
  pred.assign(succ.size(), 0);
  std::vector<std::uint32_t> fill(pred_begin.begin(), pred_begin.end() - 1);
  for (std::size_t v = 0; v < n; ++v) {
    for (auto t : successors(v)) pred[fill[t]++] = static_cast<std::uint32_t>(v);
  }
}

namespace {

void check_width(const MooreMachine& m) {
  if (m.inputs.size() > kMaxInputs) throw InputWidthExceeded(m.inputs.size(), kMaxInputs);
}

}  // namespace

Kripke kripke_view(const PointedPlant& p) {
  const MooreMachine& m = *p.machine;
  check_width(m);
  Kripke k;
  k.props = m.inputs.unite(m.outputs);
  const Remap in(m.inputs, k.props), out(m.outputs, k.props);
  const std::vector<std::size_t> reach = bfs_order(m, p.point);
  std::vector<std::size_t> rank(m.num_states(), SIZE_MAX);
  for (std::size_t i = 0; i < reach.size(); ++i) rank[reach[i]] = i;
  const std::size_t width = m.input_count();
  auto inner = [&](Valuation beta, std::size_t s) { return static_cast<std::uint32_t>(1 + rank[s] * width + beta); };

  std::vector<std::uint32_t> row(width);
  k.roots = {k.add_node(out(m.label[p.point]))};
  for (Valuation b = 0; b < width; ++b) row[b] = inner(b, m.next(p.point, b));
  k.add_successors(row);
  for (std::size_t s : reach) {
    for (Valuation b = 0; b < width; ++b) k.add_node(in(b) | out(m.label[s]));
    for (Valuation b2 = 0; b2 < width; ++b2) row[b2] = inner(b2, m.next(s, b2));
    for (Valuation b = 0; b < width; ++b) k.add_successors(row);
  }
  k.finalize();
  return k;
}

Kripke plant_model(const MooreMachine& m) {
  check_width(m);
  Kripke k;
  k.props = m.inputs.unite(m.outputs);
  const Remap in(m.inputs, k.props), out(m.outputs, k.props);
  const std::size_t n = m.num_states();
  const std::size_t width = m.input_count();
  auto inner = [&](Valuation beta, std::size_t s) { return static_cast<std::uint32_t>(n + s * width + beta); };

  std::vector<std::vector<std::uint32_t>> rows(n, std::vector<std::uint32_t>(width));
  for (std::size_t s = 0; s < n; ++s) {
    for (Valuation b = 0; b < width; ++b) rows[s][b] = inner(b, m.next(s, b));
  }
  for (std::size_t s = 0; s < n; ++s) {
    k.roots.push_back(k.add_node(out(m.label[s])));
    k.add_successors(rows[s]);
  }
  for (std::size_t s = 0; s < n; ++s) {
    for (Valuation b = 0; b < width; ++b) {
      k.add_node(in(b) | out(m.label[s]));
      k.add_successors(rows[s]);
    }
  }
  k.finalize();
  return k;
}

Kripke disjoint_union(const std::vector<const Kripke*>& parts) {
  Kripke u;
  if (parts.empty()) {
    u.finalize();
    return u;
  }
  u.props = parts.front()->props;
  for (const Kripke* p : parts) {
    if (!(p->props == u.props)) throw SignatureMismatch("Kripke structures over different propositions");
    const auto offset = static_cast<std::uint32_t>(u.size());
    std::vector<std::uint32_t> row;
    for (std::size_t v = 0; v < p->size(); ++v) {
      u.add_node(p->label[v]);
      row.clear();
      for (auto t : p->successors(v)) row.push_back(t + offset);
      u.add_successors(row);
    }
    for (auto r : p->roots) u.roots.push_back(r + offset);
  }
  u.finalize();
  return u;
}

}  // namespace ucl
