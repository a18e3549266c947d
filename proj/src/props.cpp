#include "ucl/props.hpp"

#include <algorithm>
#include <bit>
#include <functional>

#include "ucl/error.hpp"

namespace ucl {

bool is_identifier(std::string_view s) {
  if (s.empty()) return false;
  auto alpha = [](char c) { return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z'); };
  auto digit = [](char c) { return c >= '0' && c <= '9'; };
  if (!alpha(s.front())) return false;
  return std::all_of(s.begin(), s.end(), [&](char c) { return alpha(c) || digit(c) || c == '_'; });
}

PropSet::PropSet(std::vector<std::string> names) : names_(std::move(names)) {
  for (const auto& n : names_) {
    if (!is_identifier(n)) throw SyntaxError({}, "malformed proposition name '" + n + "'");
  }
  std::sort(names_.begin(), names_.end());
  names_.erase(std::unique(names_.begin(), names_.end()), names_.end());
  if (names_.size() > kMaxProps) {
    throw InputWidthExceeded(names_.size(), kMaxProps);
  }
}

std::optional<std::size_t> PropSet::index_of(std::string_view name) const {
  auto it = std::lower_bound(names_.begin(), names_.end(), name,
                             [](const std::string& a, std::string_view b) { return a < b; });
  if (it == names_.end() || *it != name) return std::nullopt;
  return static_cast<std::size_t>(it - names_.begin());
}

Valuation PropSet::mask_of(const PropSet& sub) const {
  Valuation m = 0;
  for (const auto& n : sub.names_) {
    if (auto i = index_of(n)) m |= Valuation{1} << *i;
  }
  return m;
}

PropSet PropSet::unite(const PropSet& other) const {
  std::vector<std::string> v = names_;
  v.insert(v.end(), other.names_.begin(), other.names_.end());
  return PropSet(std::move(v));
}

PropSet PropSet::minus(const PropSet& other) const {
  std::vector<std::string> v;
  for (const auto& n : names_) {
    if (!other.contains(n)) v.push_back(n);
  }
  return PropSet(std::move(v));
}

PropSet PropSet::intersect(const PropSet& other) const {
  std::vector<std::string> v;
  for (const auto& n : names_) {
    if (other.contains(n)) v.push_back(n);
  }
  return PropSet(std::move(v));
}

bool PropSet::subset_of(const PropSet& other) const {
  return std::all_of(names_.begin(), names_.end(), [&](const auto& n) { return other.contains(n); });
}

bool PropSet::disjoint(const PropSet& other) const {
  return std::none_of(names_.begin(), names_.end(), [&](const auto& n) { return other.contains(n); });
}

std::string PropSet::format(Valuation v) const {
  std::string out = "{";
  bool first = true;
  for (std::size_t i = 0; i < names_.size(); ++i) {
    if ((v >> i) & 1U) {
      if (!first) out += ' ';
      out += names_[i];
      first = false;
    }
  }
  out += '}';
  return out;
}

Valuation PropSet::valuation_of(const std::vector<std::string>& members) const {
  Valuation v = 0;
  for (const auto& m : members) {
    auto i = index_of(m);
    if (!i) throw UnknownAtom(m);
    v |= Valuation{1} << *i;
  }
  return v;
}

Remap::Remap(const PropSet& from, const PropSet& to) {
  target_.reserve(from.size());
  for (const auto& n : from.names()) {
    auto i = to.index_of(n);
    target_.push_back(i ? static_cast<int>(*i) : -1);
  }
}

Valuation Remap::operator()(Valuation v) const {
  Valuation out = 0;
  while (v != 0) {
    int b = std::countr_zero(v);
    v &= v - 1;
    int t = target_[static_cast<std::size_t>(b)];
    if (t >= 0) out |= Valuation{1} << t;
  }
  return out;
}

Bitset::Bitset(std::size_t n, bool value) : size_(n), words_((n + 63) / 64, value ? ~std::uint64_t{0} : 0) {
  if (value && (n & 63) != 0) words_.back() &= (std::uint64_t{1} << (n & 63)) - 1;
}

std::size_t Bitset::count() const {
  std::size_t c = 0;
  for (auto w : words_) c += static_cast<std::size_t>(std::popcount(w));
  return c;
}

bool Bitset::none() const {
  return std::all_of(words_.begin(), words_.end(), [](auto w) { return w == 0; });
}

Bitset& Bitset::operator&=(const Bitset& o) {
  for (std::size_t i = 0; i < words_.size(); ++i) words_[i] &= o.words_[i];
  return *this;
}

Bitset& Bitset::operator|=(const Bitset& o) {
  for (std::size_t i = 0; i < words_.size(); ++i) words_[i] |= o.words_[i];
  return *this;
}

Bitset Bitset::operator~() const {
  Bitset r = *this;
  for (auto& w : r.words_) w = ~w;
  if ((size_ & 63) != 0 && !r.words_.empty()) r.words_.back() &= (std::uint64_t{1} << (size_ & 63)) - 1;
  return r;
}

std::size_t Bitset::hash() const {
  std::uint64_t h = 0x9e3779b97f4a7c15ULL ^ size_;
  for (auto w : words_) {
    h ^= w + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
  }
  return static_cast<std::size_t>(h);
}

void Fnv1a::add(std::uint64_t v) {
  for (int i = 0; i < 8; ++i) {
    h_ ^= (v >> (8 * i)) & 0xFFU;
    h_ *= 1099511628211ULL;
  }
}

void Fnv1a::add(std::string_view s) {
  for (unsigned char c : s) {
    h_ ^= c;
    h_ *= 1099511628211ULL;
  }
  add(static_cast<std::uint64_t>(s.size()));
}

}  // namespace ucl
