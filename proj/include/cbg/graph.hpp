#pragma once

#include <compare>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "cbg/bitset.hpp"

namespace cbg {

// An unordered vertex pair, stored with u < v.
struct Edge {
  int u = 0;
  int v = 0;

  // Normalizes the endpoint order; throws std::invalid_argument on a loop.
  static Edge of(int a, int b);

  bool touches(int x) const { return u == x || v == x; }
  int other(int x) const { return x == u ? v : u; }

  auto operator<=>(const Edge&) const = default;
};

std::string to_string(Edge e);

// Number of unordered pairs on n vertices.
constexpr std::int64_t pair_count(int n) {
  return static_cast<std::int64_t>(n) * (n - 1) / 2;
}

// Rank of e among all pairs of [0, n) in lexicographic order.
std::int64_t edge_index(int n, Edge e);
Edge edge_at(int n, std::int64_t index);

// Undirected simple graph on [0, n) with one bitset row per vertex.
class SimpleGraph {
 public:
  SimpleGraph() = default;
  explicit SimpleGraph(int n);
  static SimpleGraph from_edges(int n, std::span<const Edge> edges);
  static SimpleGraph complete(int n);

  int order() const { return n_; }
  std::int64_t edge_count() const { return edges_; }
  int degree(int v) const { return degree_[static_cast<std::size_t>(v)]; }
  int max_degree() const;
  int min_degree() const;

  bool has_edge(int a, int b) const {
    return (bits_[row_offset(a) + static_cast<std::size_t>(b / kWordBits)] >> (b % kWordBits)) & 1U;
  }
  bool has_edge(Edge e) const { return has_edge(e.u, e.v); }

  int row_words() const { return words_; }
  std::span<const Word> row(int v) const {
    return {bits_.data() + row_offset(v), static_cast<std::size_t>(words_)};
  }
  VertexSet neighbors(int v) const { return VertexSet::from_words(n_, row(v)); }
  std::vector<int> neighbor_list(int v) const;
  std::vector<Edge> edges() const;

  // Copy-and-add.
  SimpleGraph with_edge(Edge e) const;

  // In-place mutation for owners that maintain their own invariants.
  // add_edge throws std::invalid_argument if e is present.
  void add_edge(Edge e);
  void remove_edge(Edge e);

  friend bool operator==(const SimpleGraph& a, const SimpleGraph& b) {
    return a.n_ == b.n_ && a.bits_ == b.bits_;
  }

 private:
  std::size_t row_offset(int v) const {
    return static_cast<std::size_t>(v) * static_cast<std::size_t>(words_);
  }

  int n_ = 0;
  int words_ = 0;
  std::vector<Word> bits_;
  std::vector<int> degree_;
  std::int64_t edges_ = 0;
};

}  // namespace cbg
