#include "cbg/bitset.hpp"

#include <algorithm>

namespace cbg {

int next_bit(std::span<const Word> words, int from) {
  if (from < 0) from = 0;
  std::size_t w = static_cast<std::size_t>(from / kWordBits);
  if (w >= words.size()) return -1;
  Word x = words[w] & (~Word{0} << (from % kWordBits));
  while (true) {
    if (x) return static_cast<int>(w) * kWordBits + std::countr_zero(x);
    if (++w >= words.size()) return -1;
    x = words[w];
  }
}

VertexSet VertexSet::full(int n) {
  VertexSet s(n);
  for (int v = 0; v < n; ++v) s.set(v);
  return s;
}

VertexSet VertexSet::from_words(int n, std::span<const Word> words) {
  VertexSet s(n);
  std::copy(words.begin(), words.end(), s.words_.begin());
  return s;
}

void VertexSet::clear() { std::fill(words_.begin(), words_.end(), 0); }

int VertexSet::count() const {
  int c = 0;
  for (Word w : words_) c += std::popcount(w);
  return c;
}

bool VertexSet::any() const {
  return std::any_of(words_.begin(), words_.end(), [](Word w) { return w != 0; });
}

std::vector<int> VertexSet::to_vector() const {
  std::vector<int> out;
  for_each([&](int v) { out.push_back(v); });
  return out;
}

VertexSet& VertexSet::operator|=(const VertexSet& o) {
  for (std::size_t i = 0; i < words_.size(); ++i) words_[i] |= o.words_[i];
  return *this;
}

VertexSet& VertexSet::operator&=(const VertexSet& o) {
  for (std::size_t i = 0; i < words_.size(); ++i) words_[i] &= o.words_[i];
  return *this;
}

VertexSet& VertexSet::operator-=(const VertexSet& o) {
  for (std::size_t i = 0; i < words_.size(); ++i) words_[i] &= ~o.words_[i];
  return *this;
}

}  // namespace cbg
