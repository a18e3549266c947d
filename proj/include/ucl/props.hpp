#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace ucl {

/// A valuation is a bitmask over some PropSet: bit i set iff names()[i] holds.
using Valuation = std::uint64_t;

/// Upper bound on propositions per set; valuation tables are dense.
inline constexpr std::size_t kMaxProps = 24;

bool is_identifier(std::string_view s);

/// Sorted, duplicate-free set of proposition names.
class PropSet {
 public:
  PropSet() = default;
  /// Sorts and deduplicates; throws SyntaxError on malformed names.
  explicit PropSet(std::vector<std::string> names);

  std::size_t size() const noexcept { return names_.size(); }
  bool empty() const noexcept { return names_.empty(); }
  const std::vector<std::string>& names() const noexcept { return names_; }
  const std::string& operator[](std::size_t i) const { return names_[i]; }

  std::optional<std::size_t> index_of(std::string_view name) const;
  bool contains(std::string_view name) const { return index_of(name).has_value(); }

  /// Number of valuations, 2^size().
  std::size_t valuation_count() const { return std::size_t{1} << names_.size(); }
  Valuation full_mask() const { return names_.empty() ? 0 : (Valuation{1} << names_.size()) - 1; }

  /// Mask (in this set's bit order) of the members of `sub` that belong to this set.
  Valuation mask_of(const PropSet& sub) const;

  PropSet unite(const PropSet& other) const;
  PropSet minus(const PropSet& other) const;
  PropSet intersect(const PropSet& other) const;
  bool subset_of(const PropSet& other) const;
  bool disjoint(const PropSet& other) const;

  /// "{a b}" rendering, members in sorted order.
  std::string format(Valuation v) const;
  /// Valuation from member names; throws UnknownAtom for non-members.
  Valuation valuation_of(const std::vector<std::string>& members) const;

  friend bool operator==(const PropSet&, const PropSet&) = default;

 private:
  std::vector<std::string> names_;
};

/// Precomputed bit translation from one PropSet's bit order into another's.
/// Members of `from` absent in `to` are dropped.
class Remap {
 public:
  Remap() = default;
  Remap(const PropSet& from, const PropSet& to);
  Valuation operator()(Valuation v) const;

 private:
  std::vector<int> target_;  // per source bit, destination bit or -1
};

/// Fixed-length bit vector used for satisfaction sets.
class Bitset {
 public:
  Bitset() = default;
  explicit Bitset(std::size_t n, bool value = false);

  std::size_t size() const noexcept { return size_; }
  bool test(std::size_t i) const { return (words_[i >> 6] >> (i & 63)) & 1U; }
  void set(std::size_t i) { words_[i >> 6] |= std::uint64_t{1} << (i & 63); }
  void reset(std::size_t i) { words_[i >> 6] &= ~(std::uint64_t{1} << (i & 63)); }
  std::size_t count() const;
  bool all() const { return count() == size_; }
  bool none() const;

  Bitset& operator&=(const Bitset& o);
  Bitset& operator|=(const Bitset& o);
  Bitset operator~() const;
  friend Bitset operator&(Bitset a, const Bitset& b) { return a &= b; }
  friend Bitset operator|(Bitset a, const Bitset& b) { return a |= b; }
  friend bool operator==(const Bitset&, const Bitset&) = default;

  std::size_t hash() const;
  const std::vector<std::uint64_t>& words() const noexcept { return words_; }
  std::vector<std::uint64_t>& words() noexcept { return words_; }

 private:
  std::size_t size_ = 0;
  std::vector<std::uint64_t> words_;
};

struct BitsetHash {
  std::size_t operator()(const Bitset& b) const { return b.hash(); }
};

/// 64-bit FNV-1a, used for fingerprints.
class Fnv1a {
 public:
  void add(std::uint64_t v);
  void add(std::string_view s);
  std::uint64_t value() const noexcept { return h_; }

 private:
  std::uint64_t h_ = 1469598103934665603ULL;
};

}  // namespace ucl
