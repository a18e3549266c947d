#include "ucl/learner.hpp"

#include <omp.h>

#include <algorithm>
#include <unordered_map>
#include <unordered_set>

#include "ucl/error.hpp"
#include "ucl/kripke.hpp"
#include "ucl/mc.hpp"

namespace ucl {

void LearnerParams::validate() const {
  if (max_size < 1) throw InvalidConfig("learner max size must be at least 1");
  if (threads < 0) throw InvalidConfig("learner thread count must be non-negative");
  for (auto op : operators) {
    if (!ctl::is_unary(op) && !ctl::is_binary(op)) throw InvalidConfig("learner operators must be CTL connectives");
  }
}

namespace {

using ctl::Op;

constexpr std::size_t kChunk = 2048;

struct Cand {
  Op op = Op::True;
  std::uint32_t atom = 0;  // index into the atom list for Op::Atom
  std::uint8_t ls = 0, rs = 0;
  std::uint32_t li = 0, ri = 0;
};

struct Level {
  std::vector<Cand> cands;
  std::vector<Bitset> bits;
};

bool commutative(Op op) { return op == Op::And || op == Op::Or; }

class Enumerator {
 public:
  Enumerator(const Kripke& k, std::vector<std::uint32_t> pos, std::vector<std::uint32_t> neg,
             std::vector<std::string> atoms, const LearnerParams& params, bool parallel)
      : k_(k),
        pos_(std::move(pos)),
        neg_(std::move(neg)),
        atoms_(std::move(atoms)),
        params_(params),
        parallel_(parallel),
        seen_(1024, KeyHash{this}, KeyEq{this}) {
    for (Op op : ctl::kEnumerationOrder) {
      if (std::find(params.operators.begin(), params.operators.end(), op) != params.operators.end()) ops_.push_back(op);
    }
  }

  ctl::Formula run(LearnStats* stats) {
    levels_.resize(static_cast<std::size_t>(params_.max_size) + 1);
    for (int n = 1; n <= params_.max_size; ++n) {
      current_ = n;
      if (generate(n) || flush()) {
        if (stats) *stats = {generated_, seen_.size(), n};
        return build(found_);
      }
    }
    if (stats) *stats = {generated_, seen_.size(), params_.max_size};
    throw NoSeparator(params_.max_size);
  }

 private:
  struct KeyHash {
    const Enumerator* e;
    std::size_t operator()(std::uint64_t key) const { return e->bits_of(key).hash(); }
  };
  struct KeyEq {
    const Enumerator* e;
    bool operator()(std::uint64_t a, std::uint64_t b) const { return e->bits_of(a) == e->bits_of(b); }
  };

  const Bitset& bits_of(std::uint64_t key) const { return levels_[key >> 32].bits[key & 0xffffffffU]; }

  // Enumerates size-n candidates in the fixed order; true once a separator was found.
  bool generate(int n) {
    if (n == 1) {
      for (std::uint32_t i = 0; i < atoms_.size(); ++i) {
        Cand c;
        c.op = Op::Atom;
        c.atom = i;
        if (emit(c)) return true;
      }
      Cand t;
      t.op = Op::True;
      if (emit(t)) return true;
      Cand f;
      f.op = Op::False;
      return emit(f);
    }
    for (Op op : ops_) {
      if (ctl::is_unary(op)) {
        const auto sub = static_cast<std::uint8_t>(n - 1);
        for (std::uint32_t i = 0; i < levels_[sub].bits.size(); ++i) {
          Cand c;
          c.op = op;
          c.ls = sub;
          c.li = i;
          if (emit(c)) return true;
        }
        continue;
      }
      for (int ls = 1; ls <= n - 2; ++ls) {
        const int rs = n - 1 - ls;
        if (commutative(op) && ls > rs) continue;
        const auto& left = levels_[static_cast<std::size_t>(ls)];
        const auto& right = levels_[static_cast<std::size_t>(rs)];
        // The level lists are stable while level n is being generated.
        const std::size_t nl = left.bits.size(), nr = right.bits.size();
        for (std::uint32_t li = 0; li < nl; ++li) {
          const std::uint32_t r0 = commutative(op) && ls == rs ? li + 1 : 0;
          for (std::uint32_t ri = r0; ri < nr; ++ri) {
            Cand c;
            c.op = op;
            c.ls = static_cast<std::uint8_t>(ls);
            c.rs = static_cast<std::uint8_t>(rs);
            c.li = li;
            c.ri = ri;
            if (emit(c)) return true;
          }
        }
      }
    }
    return false;
  }

  bool emit(const Cand& c) {
    buffer_.push_back(c);
    return buffer_.size() >= kChunk && flush();
  }

  Bitset evaluate(const Cand& c) const {
    switch (c.op) {
      case Op::True: return Bitset(k_.size(), true);
      case Op::False: return Bitset(k_.size(), false);
      case Op::Atom: return mc::atom(k_, atoms_[c.atom]);
      default: {
        const Bitset& a = levels_[c.ls].bits[c.li];
        static const Bitset kNone;
        const Bitset& b = ctl::is_binary(c.op) ? levels_[c.rs].bits[c.ri] : kNone;
        return mc::apply(k_, c.op, a, b);
      }
    }
  }

  bool separates(const Bitset& b) const {
    for (auto r : pos_) {
      if (!b.test(r)) return false;
    }
    for (auto r : neg_) {
      if (b.test(r)) return false;
    }
    return true;
  }

  // Evaluates the buffered candidates, then scans them in order.
  bool flush() {
    const std::size_t count = buffer_.size();
    if (count == 0) return false;
    std::vector<Bitset> out(count);
    if (parallel_) {
      const int threads = params_.threads > 0 ? params_.threads : omp_get_max_threads();
#pragma omp parallel for schedule(dynamic, 32) num_threads(threads)
      for (std::size_t i = 0; i < count; ++i) out[i] = evaluate(buffer_[i]);
    } else {
      for (std::size_t i = 0; i < count; ++i) out[i] = evaluate(buffer_[i]);
    }
    generated_ += count;
    Level& level = levels_[static_cast<std::size_t>(current_)];
    for (std::size_t i = 0; i < count; ++i) {
      if (separates(out[i])) {
        found_ = buffer_[i];
        buffer_.clear();
        return true;
      }
      const auto idx = static_cast<std::uint32_t>(level.bits.size());
      level.bits.push_back(std::move(out[i]));
      level.cands.push_back(buffer_[i]);
      const std::uint64_t key = (static_cast<std::uint64_t>(current_) << 32) | idx;
      if (!seen_.insert(key).second) {
        level.bits.pop_back();
        level.cands.pop_back();
      } else if (seen_.size() > params_.max_candidates) {
        throw CandidateBudgetExceeded(params_.max_candidates, current_);
      }
    }
    buffer_.clear();
    return false;
  }

  ctl::Formula build(const Cand& c) const {
    switch (c.op) {
      case Op::True: return ctl::make_true();
      case Op::False: return ctl::make_false();
      case Op::Atom: return ctl::atom(atoms_[c.atom]);
      default: {
        ctl::Formula a = build(levels_[c.ls].cands[c.li]);
        if (ctl::is_unary(c.op)) return ctl::canonicalize(ctl::unary(c.op, a));
        return ctl::canonicalize(ctl::binary(c.op, a, build(levels_[c.rs].cands[c.ri])));
      }
    }
  }

  const Kripke& k_;
  std::vector<std::uint32_t> pos_, neg_;
  std::vector<std::string> atoms_;
  const LearnerParams& params_;
  bool parallel_;
  std::vector<Op> ops_;
  std::vector<Level> levels_;
  std::unordered_set<std::uint64_t, KeyHash, KeyEq> seen_;
  std::vector<Cand> buffer_;
  Cand found_;
  int current_ = 0;
  std::size_t generated_ = 0;
};

ctl::Formula learn(const std::vector<PointedPlant>& pos, const std::vector<PointedPlant>& neg,
                   const LearnerParams& params, LearnStats* stats, bool parallel) {
  params.validate();
  if (stats) *stats = {};
  if (neg.empty()) return ctl::make_true();
  if (pos.empty()) return ctl::make_false();

  // Samples from plants reading different inputs are compared on the union of their inputs.
  PropSet inputs;
  const PropSet& outputs = pos.front().machine->outputs;
  for (const auto* side : {&pos, &neg}) {
    for (const auto& p : *side) {
      if (!(p.machine->outputs == outputs)) throw SignatureMismatch("samples disagree on plant outputs");
      inputs = inputs.unite(p.machine->inputs);
    }
  }

  // One Kripke view per behaviourally distinct sample, built on the minimal quotient.
  std::unordered_map<std::uint64_t, std::size_t> part_of;
  std::vector<Kripke> parts;
  std::vector<const PointedPlant*> reps;
  auto part = [&](const PointedPlant& p) {
    auto [it, inserted] = part_of.emplace(p.fingerprint, parts.size());
    if (inserted) {
      MooreMachine min = minimize(*p.machine, p.point);
      if (!(min.inputs == inputs)) min = widen_inputs(min, inputs);
      auto q = std::make_shared<const MooreMachine>(std::move(min));
      parts.push_back(kripke_view(PointedPlant{q, 0, p.fingerprint}));
      reps.push_back(&p);
    } else if (!bisimilar(*reps[it->second], p)) {
      throw InternalError("fingerprint collision between non-bisimilar samples");
    }
    return it->second;
  };
  std::vector<std::size_t> pos_parts, neg_parts;
  for (const auto& p : pos) pos_parts.push_back(part(p));
  const std::size_t first_neg = parts.size();
  for (const auto& p : neg) {
    const std::size_t i = part(p);
    if (i < first_neg) {
      throw Inconsistent(p.machine->name + "@" + p.state_name() + " is a positive and a negative sample");
    }
    neg_parts.push_back(i);
  }

  std::vector<const Kripke*> ptrs;
  for (const auto& k : parts) ptrs.push_back(&k);
  const Kripke u = disjoint_union(ptrs);
  auto roots = [&](const std::vector<std::size_t>& ids) {
    std::vector<std::uint32_t> out;
    for (auto i : ids) out.push_back(u.roots[i]);
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
  };

  std::vector<std::string> atoms;
  if (params.atoms) {
    for (const auto& a : params.atoms->names()) {
      if (!u.props.contains(a)) throw UnknownAtom(a);
      atoms.push_back(a);
    }
  } else {
    atoms = u.props.names();
  }
  Enumerator e(u, roots(pos_parts), roots(neg_parts), std::move(atoms), params, parallel);
  return e.run(stats);
}

}  // namespace

ctl::Formula learn_ctl(const std::vector<PointedPlant>& pos, const std::vector<PointedPlant>& neg,
                       const LearnerParams& params, LearnStats* stats) {
  return learn(pos, neg, params, stats, true);
}

ctl::Formula learn_ctl_serial(const std::vector<PointedPlant>& pos, const std::vector<PointedPlant>& neg,
                              const LearnerParams& params, LearnStats* stats) {
  return learn(pos, neg, params, stats, false);
}

}  // namespace ucl
