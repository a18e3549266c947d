#include "ucl/mc.hpp"

#include "ucl/error.hpp"

namespace ucl {

namespace mc {

Bitset atom(const Kripke& k, std::string_view name) {
  auto i = k.props.index_of(name);
  if (!i) throw UnknownAtom(std::string(name));
  Bitset r(k.size());
  for (std::size_t v = 0; v < k.size(); ++v) {
    if ((k.label[v] >> *i) & 1U) r.set(v);
  }
  return r;
}

Bitset ex(const Kripke& k, const Bitset& a) {
  Bitset r(k.size());
  for (std::size_t v = 0; v < k.size(); ++v) {
    for (auto t : k.successors(v)) {
      if (a.test(t)) {
        r.set(v);
        break;
      }
    }
  }
  return r;
}

Bitset ax(const Kripke& k, const Bitset& a) {
  Bitset r(k.size());
  for (std::size_t v = 0; v < k.size(); ++v) {
    bool all = true;
    for (auto t : k.successors(v)) {
      if (!a.test(t)) {
        all = false;
        break;
      }
    }
    if (all) r.set(v);
  }
  return r;
}

Bitset eu(const Kripke& k, const Bitset& a, const Bitset& b) {
  Bitset r = b;
  std::vector<std::uint32_t> work;
  for (std::size_t v = 0; v < k.size(); ++v) {
    if (b.test(v)) work.push_back(static_cast<std::uint32_t>(v));
  }
  while (!work.empty()) {
    const auto v = work.back();
    work.pop_back();
    for (auto p : k.predecessors(v)) {
      if (!r.test(p) && a.test(p)) {
        r.set(p);
        work.push_back(p);
      }
    }
  }
  return r;
}

Bitset au(const Kripke& k, const Bitset& a, const Bitset& b) {
  // missing[v]: successors of v not yet known to satisfy A[a U b].
  std::vector<std::uint32_t> missing(k.size());
  for (std::size_t v = 0; v < k.size(); ++v) missing[v] = k.succ_begin[v + 1] - k.succ_begin[v];
  Bitset r = b;
  std::vector<std::uint32_t> work;
  for (std::size_t v = 0; v < k.size(); ++v) {
    if (b.test(v)) work.push_back(static_cast<std::uint32_t>(v));
  }
  while (!work.empty()) {
    const auto v = work.back();
    work.pop_back();
    for (auto p : k.predecessors(v)) {
      if (--missing[p] == 0 && !r.test(p) && a.test(p)) {
        r.set(p);
        work.push_back(p);
      }
    }
  }
  return r;
}

Bitset eg(const Kripke& k, const Bitset& a) {
  // alive[v]: successors of v still inside the candidate set.
  std::vector<std::uint32_t> alive(k.size(), 0);
  Bitset r = a;
  for (std::size_t v = 0; v < k.size(); ++v) {
    for (auto t : k.successors(v)) alive[v] += a.test(t) ? 1 : 0;
  }
  std::vector<std::uint32_t> work;
  for (std::size_t v = 0; v < k.size(); ++v) {
    if (r.test(v) && alive[v] == 0) {
      r.reset(v);
      work.push_back(static_cast<std::uint32_t>(v));
    }
  }
  while (!work.empty()) {
    const auto v = work.back();
    work.pop_back();
    for (auto p : k.predecessors(v)) {
      if (!r.test(p)) continue;
      if (--alive[p] == 0) {
        r.reset(p);
        work.push_back(p);
      }
    }
  }
  return r;
}

Bitset apply(const Kripke& k, ctl::Op op, const Bitset& a, const Bitset& b) {
  using ctl::Op;
  switch (op) {
    case Op::Not: return ~a;
    case Op::And: return a & b;
    case Op::Or: return a | b;
    case Op::Implies: return ~a | b;
    case Op::AX: return ax(k, a);
    case Op::EX: return ex(k, a);
    case Op::AF: return au(k, Bitset(k.size(), true), a);
    case Op::EF: return eu(k, Bitset(k.size(), true), a);
    case Op::AG: return ~eu(k, Bitset(k.size(), true), ~a);
    case Op::EG: return eg(k, a);
    case Op::AU: return au(k, a, b);
    case Op::EU: return eu(k, a, b);
    default: throw InternalError("mc::apply on a non-operator");
  }
}

}  // namespace mc

Bitset sat_set(const Kripke& k, const ctl::Formula& f) {
  using ctl::Op;
  switch (f->op) {
    case Op::True: return Bitset(k.size(), true);
    case Op::False: return Bitset(k.size(), false);
    case Op::Atom: return mc::atom(k, f->atom);
    default: {
      Bitset a = sat_set(k, f->lhs);
      Bitset b = ctl::is_binary(f->op) ? sat_set(k, f->rhs) : Bitset();
      return mc::apply(k, f->op, a, b);
    }
  }
}

McResult mc_ctl(const Kripke& k, const ctl::Formula& f) {
  McResult r;
  r.sat = sat_set(k, f);
  r.holds_at_root = !k.roots.empty() && r.sat.test(k.root());
  return r;
}

}  // namespace ucl
