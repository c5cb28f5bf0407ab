#pragma once

#include <bit>
#include <cstdint>
#include <span>
#include <vector>

namespace cbg {

using Word = std::uint64_t;

inline constexpr int kWordBits = 64;

constexpr int words_for(int bits) { return (bits + kWordBits - 1) / kWordBits; }
constexpr Word bit_of(int i) { return Word{1} << (i % kWordBits); }

// Calls f(i) for every set bit i of a word span, in increasing order.
template <class F>
void for_each_bit(std::span<const Word> words, F&& f) {
  for (std::size_t w = 0; w < words.size(); ++w) {
    Word x = words[w];
    while (x) {
      const int b = std::countr_zero(x);
      x &= x - 1;
      f(static_cast<int>(w) * kWordBits + b);
    }
  }
}

// First set bit at position >= from, or -1.
int next_bit(std::span<const Word> words, int from);

// Dense set over the vertex range [0, n).
class VertexSet {
 public:
  VertexSet() = default;
  explicit VertexSet(int n) : n_(n), words_(static_cast<std::size_t>(words_for(n)), 0) {}
  static VertexSet full(int n);
  static VertexSet from_words(int n, std::span<const Word> words);

  int universe() const { return n_; }
  bool test(int v) const { return (words_[static_cast<std::size_t>(v / kWordBits)] >> (v % kWordBits)) & 1U; }
  void set(int v) { words_[static_cast<std::size_t>(v / kWordBits)] |= bit_of(v); }
  void reset(int v) { words_[static_cast<std::size_t>(v / kWordBits)] &= ~bit_of(v); }
  void clear();

  int count() const;
  bool any() const;
  bool none() const { return !any(); }
  int first() const { return next_bit(words_, 0); }
  int next(int v) const { return next_bit(words_, v + 1); }

  template <class F>
  void for_each(F&& f) const {
    for_each_bit(words_, f);
  }
  std::vector<int> to_vector() const;

  std::span<const Word> words() const { return words_; }
  std::span<Word> words() { return words_; }

  VertexSet& operator|=(const VertexSet& o);
  VertexSet& operator&=(const VertexSet& o);
  VertexSet& operator-=(const VertexSet& o);
  friend bool operator==(const VertexSet&, const VertexSet&) = default;

 private:
  int n_ = 0;
  std::vector<Word> words_;
};

}  // namespace cbg
