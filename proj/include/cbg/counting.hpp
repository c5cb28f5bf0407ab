#pragma once

#include <climits>
#include <cstdint>
#include <stdexcept>

#include "cbg/bitset.hpp"
#include "cbg/graph.hpp"
#include "cbg/pattern.hpp"

namespace cbg {

inline constexpr int kMaxCountedOrder = 8;
inline constexpr int kInfiniteGirth = INT_MAX;

struct UnsupportedPattern : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

// N(H, G): subgraphs of G isomorphic to H.
std::uint64_t count_copies(const Pattern& h, const SimpleGraph& g);

// Sum of C(d(v), l) for l >= 2; edge count for l = 1.
std::uint64_t count_stars(int leaves, const SimpleGraph& g);

// Whether G + e contains a copy of F. Expects e not in G.
bool creates_copy(const Pattern& f, const SimpleGraph& g, Edge e);

// Copies of H in G + e that use e. Expects e not in G.
std::uint64_t count_copies_through(const Pattern& h, const SimpleGraph& g, Edge e);

// Vertices at distance 1..r from v.
VertexSet distance_ball(const SimpleGraph& g, int v, int r);

// Length of a shortest cycle, or kInfiniteGirth for a forest.
int girth(const SimpleGraph& g);

// Labeled embeddings of H by trying every injective vertex map; test oracle.
std::uint64_t naive_embeddings(const Pattern& h, const SimpleGraph& g);

}  // namespace cbg
