#include "ucl/plant.hpp"

#include <algorithm>
#include <map>

#include "ucl/error.hpp"

namespace ucl {

MooreMachine minimize(const MooreMachine& m, std::size_t from) {
  if (from >= m.num_states()) throw UnknownState(std::to_string(from));
  const std::vector<std::size_t> reach = bfs_order(m, from);
  const std::size_t n = reach.size();
  const std::size_t width = m.input_count();
  std::vector<std::size_t> local(m.num_states(), SIZE_MAX);
  for (std::size_t i = 0; i < n; ++i) local[reach[i]] = i;

  // Moore partition refinement, starting from the label partition.
  std::vector<std::size_t> cls(n);
  {
    std::map<Valuation, std::size_t> ids;
    for (std::size_t i = 0; i < n; ++i) cls[i] = ids.emplace(m.label[reach[i]], ids.size()).first->second;
  }
  std::size_t classes = 0;
  for (auto c : cls) classes = std::max(classes, c + 1);
  for (;;) {
    std::map<std::vector<std::size_t>, std::size_t> ids;
    std::vector<std::size_t> next(n);
    std::vector<std::size_t> sig(width + 1);
    for (std::size_t i = 0; i < n; ++i) {
      sig[0] = cls[i];
      for (std::size_t v = 0; v < width; ++v) sig[v + 1] = cls[local[m.next(reach[i], v)]];
      next[i] = ids.emplace(sig, ids.size()).first->second;
    }
    const std::size_t refined = ids.size();
    cls.swap(next);
    if (refined == classes) break;
    classes = refined;
  }

  // Canonical numbering of classes by BFS from the class of `from`.
  std::vector<std::size_t> rep(classes, SIZE_MAX);
  for (std::size_t i = 0; i < n; ++i) {
    if (rep[cls[i]] == SIZE_MAX) rep[cls[i]] = reach[i];
  }
  std::vector<std::size_t> canon(classes, SIZE_MAX);
  std::vector<std::size_t> order{cls[0]};
  canon[cls[0]] = 0;
  for (std::size_t k = 0; k < order.size(); ++k) {
    const std::size_t s = rep[order[k]];
    for (std::size_t v = 0; v < width; ++v) {
      const std::size_t c = cls[local[m.next(s, v)]];
      if (canon[c] == SIZE_MAX) {
        canon[c] = order.size();
        order.push_back(c);
      }
    }
  }

  MooreMachine q;
  q.name = m.name + "_min";
  q.role = m.role;
  q.inputs = m.inputs;
  q.outputs = m.outputs;
  q.initial = 0;
  for (std::size_t k = 0; k < order.size(); ++k) {
    const std::size_t s = rep[order[k]];
    q.state_names.push_back("c" + std::to_string(k));
    q.label.push_back(m.label[s]);
    for (std::size_t v = 0; v < width; ++v) {
      q.tau.push_back(static_cast<std::uint32_t>(canon[cls[local[m.next(s, v)]]]));
    }
  }
  return q;
}

std::uint64_t fingerprint(const MooreMachine& m, std::size_t from) {
  const MooreMachine q = minimize(m, from);
  Fnv1a h;
  h.add(q.inputs.size());
  for (const auto& p : q.inputs.names()) h.add(p);
  h.add(q.outputs.size());
  for (const auto& p : q.outputs.names()) h.add(p);
  h.add(q.num_states());
  for (std::size_t s = 0; s < q.num_states(); ++s) {
    h.add(q.label[s]);
    for (std::size_t v = 0; v < q.input_count(); ++v) h.add(q.next(s, v));
  }
  return h.value();
}

std::uint64_t table_fingerprint(const MooreMachine& m) {
  const std::string text = serialize_plant(m);
  Fnv1a h;
  h.add(std::string_view(text).substr(text.find('\n') + 1));
  return h.value();
}

PointedPlant sub_plant(std::shared_ptr<const MooreMachine> m, std::size_t s) {
  if (s >= m->num_states()) throw UnknownState(std::to_string(s));
  PointedPlant p;
  p.fingerprint = fingerprint(*m, s);
  p.point = s;
  p.machine = std::move(m);
  return p;
}

PointedPlant sub_plant(std::shared_ptr<const MooreMachine> m, std::string_view state) {
  const std::size_t s = m->state_index(state);
  return sub_plant(std::move(m), s);
}

bool bisimilar(const PointedPlant& a, const PointedPlant& b) {
  const MooreMachine& x = *a.machine;
  const MooreMachine& y = *b.machine;
  if (!(x.inputs == y.inputs) || !(x.outputs == y.outputs)) {
    throw SignatureMismatch("'" + x.name + "' and '" + y.name + "' have different propositions");
  }
  const std::size_t nx = x.num_states(), ny = y.num_states();
  std::vector<char> rel(nx * ny);
  for (std::size_t i = 0; i < nx; ++i) {
    for (std::size_t j = 0; j < ny; ++j) rel[i * ny + j] = x.label[i] == y.label[j];
  }
  for (bool changed = true; changed;) {
    changed = false;
    for (std::size_t i = 0; i < nx; ++i) {
      for (std::size_t j = 0; j < ny; ++j) {
        if (!rel[i * ny + j]) continue;
        for (std::size_t v = 0; v < x.input_count(); ++v) {
          if (!rel[x.next(i, v) * ny + y.next(j, v)]) {
            rel[i * ny + j] = 0;
            changed = true;
            break;
          }
        }
      }
    }
  }
  return rel[a.point * ny + b.point] != 0;
}

}  // namespace ucl
