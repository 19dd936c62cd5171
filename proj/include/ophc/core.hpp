#pragma once

#include <algorithm>
#include <bit>
#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <limits>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace ophc {

/// Dense element index in [0, n).
using ElementId = std::size_t;

/// Raised when an argument violates an operation's precondition.
class domain_error : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Raised when an exact method is asked to handle more elements than its
/// configured limit.
class capacity_error : public std::length_error {
 public:
  using std::length_error::length_error;
};

// Row-major n x n matrix.
template <class T>
class SquareMatrix {
 public:
  SquareMatrix() = default;
  explicit SquareMatrix(std::size_t n, T fill = T{}) : n_(n), data_(n * n, fill) {}

  std::size_t size() const noexcept { return n_; }

  T& operator()(std::size_t i, std::size_t j) noexcept { return data_[i * n_ + j]; }
  const T& operator()(std::size_t i, std::size_t j) const noexcept { return data_[i * n_ + j]; }

  const std::vector<T>& data() const noexcept { return data_; }

  friend bool operator==(const SquareMatrix&, const SquareMatrix&) = default;

 private:
  std::size_t n_ = 0;
  std::vector<T> data_;
};

/// Subset of a universe [0, n), stored as a dynamic bitset.
class ElementSet {
 public:
  using Word = std::uint64_t;
  static constexpr std::size_t kWordBits = 64;

  ElementSet() = default;
  explicit ElementSet(std::size_t universe)
      : universe_(universe), words_((universe + kWordBits - 1) / kWordBits, 0) {}

  static ElementSet all(std::size_t universe) {
    ElementSet s(universe);
    for (std::size_t i = 0; i < universe; ++i) s.insert(i);
    return s;
  }

  static ElementSet of(std::size_t universe, std::initializer_list<ElementId> xs) {
    ElementSet s(universe);
    for (auto x : xs) s.insert(x);
    return s;
  }

  template <class Range>
  static ElementSet from_range(std::size_t universe, const Range& xs) {
    ElementSet s(universe);
    for (auto x : xs) s.insert(static_cast<ElementId>(x));
    return s;
  }

  /// Builds a set from the low `universe` bits of `mask`; universe must be <= 64.
  static ElementSet from_mask(std::size_t universe, Word mask) {
    if (universe > kWordBits) throw domain_error("ElementSet::from_mask: universe exceeds 64");
    ElementSet s(universe);
    if (universe > 0) s.words_[0] = universe == kWordBits ? mask : (mask & ((Word{1} << universe) - 1));
    return s;
  }

  std::size_t universe() const noexcept { return universe_; }

  void insert(ElementId x) {
    check(x);
    words_[x / kWordBits] |= Word{1} << (x % kWordBits);
  }
  void erase(ElementId x) {
    check(x);
    words_[x / kWordBits] &= ~(Word{1} << (x % kWordBits));
  }
  bool contains(ElementId x) const noexcept {
    return x < universe_ && ((words_[x / kWordBits] >> (x % kWordBits)) & 1U);
  }

  std::size_t size() const noexcept {
    std::size_t c = 0;
    for (auto w : words_) c += static_cast<std::size_t>(std::popcount(w));
    return c;
  }
  bool empty() const noexcept {
    return std::all_of(words_.begin(), words_.end(), [](Word w) { return w == 0; });
  }

  bool intersects(const ElementSet& o) const noexcept {
    for (std::size_t i = 0; i < std::min(words_.size(), o.words_.size()); ++i)
      if (words_[i] & o.words_[i]) return true;
    return false;
  }
  bool is_subset_of(const ElementSet& o) const noexcept {
    for (std::size_t i = 0; i < words_.size(); ++i) {
      Word other = i < o.words_.size() ? o.words_[i] : 0;
      if (words_[i] & ~other) return false;
    }
    return true;
  }

  ElementSet& operator|=(const ElementSet& o) {
    same_universe(o);
    for (std::size_t i = 0; i < words_.size(); ++i) words_[i] |= o.words_[i];
    return *this;
  }
  ElementSet& operator&=(const ElementSet& o) {
    same_universe(o);
    for (std::size_t i = 0; i < words_.size(); ++i) words_[i] &= o.words_[i];
    return *this;
  }
  /// Set difference.
  ElementSet& operator-=(const ElementSet& o) {
    same_universe(o);
    for (std::size_t i = 0; i < words_.size(); ++i) words_[i] &= ~o.words_[i];
    return *this;
  }
  friend ElementSet operator|(ElementSet a, const ElementSet& b) { return a |= b; }
  friend ElementSet operator&(ElementSet a, const ElementSet& b) { return a &= b; }
  friend ElementSet operator-(ElementSet a, const ElementSet& b) { return a -= b; }

  friend bool operator==(const ElementSet&, const ElementSet&) = default;

  /// Orders sets by their value as binary numbers (element 0 least significant).
  friend bool lex_less(const ElementSet& a, const ElementSet& b) noexcept {
    for (std::size_t i = a.words_.size(); i-- > 0;) {
      Word bw = i < b.words_.size() ? b.words_[i] : 0;
      if (a.words_[i] != bw) return a.words_[i] < bw;
    }
    return false;
  }

  template <class F>
  void for_each(F&& f) const {
    for (std::size_t i = 0; i < words_.size(); ++i) {
      Word w = words_[i];
      while (w) {
        auto bit = static_cast<std::size_t>(std::countr_zero(w));
        f(static_cast<ElementId>(i * kWordBits + bit));
        w &= w - 1;
      }
    }
  }

  std::vector<ElementId> elements() const {
    std::vector<ElementId> out;
    out.reserve(size());
    for_each([&](ElementId x) { out.push_back(x); });
    return out;
  }

  ElementId first() const {
    for (std::size_t i = 0; i < words_.size(); ++i)
      if (words_[i]) return i * kWordBits + static_cast<std::size_t>(std::countr_zero(words_[i]));
    throw domain_error("ElementSet::first on empty set");
  }

 private:
  void check(ElementId x) const {
    if (x >= universe_) throw domain_error("element " + std::to_string(x) + " outside universe of size " +
                                           std::to_string(universe_));
  }
  void same_universe(const ElementSet& o) const {
    if (o.universe_ != universe_) throw domain_error("ElementSet universes differ");
  }

  std::size_t universe_ = 0;
  std::vector<Word> words_;
};

/// SplitMix64 generator. Streams keyed by (seed, stream id) are independent
/// of evaluation order, which keeps parallel and sequential runs identical.
class SplitMix64 {
 public:
  using result_type = std::uint64_t;

  explicit SplitMix64(std::uint64_t seed = 0) : state_(seed) {}
  SplitMix64(std::uint64_t seed, std::uint64_t stream) : state_(mix(seed ^ mix(stream + 0x632be59bd9b4e019ULL))) {}

  static constexpr result_type min() { return 0; }
  static constexpr result_type max() { return std::numeric_limits<result_type>::max(); }

  result_type operator()() noexcept {
    state_ += 0x9e3779b97f4a7c15ULL;
    return mix(state_);
  }

  /// Uniform in [0, 1) with 53 bits of precision.
  double uniform() noexcept { return static_cast<double>((*this)() >> 11) * 0x1.0p-53; }

  /// Uniform integer in [0, bound).
  std::uint64_t below(std::uint64_t bound) noexcept {
    // Lemire's multiply-shift; the bias is < 2^-64 * bound and irrelevant here.
    __extension__ using u128 = unsigned __int128;
    return static_cast<std::uint64_t>((static_cast<u128>((*this)()) * bound) >> 64);
  }

  static constexpr std::uint64_t mix(std::uint64_t z) noexcept {
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

 private:
  std::uint64_t state_;
};

template <class T, class Rng>
void shuffle_in_place(std::vector<T>& v, Rng& rng) {
  for (std::size_t i = v.size(); i > 1; --i) std::swap(v[i - 1], v[rng.below(i)]);
}

}  // namespace ophc
