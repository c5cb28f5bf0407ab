#pragma once

#include <cstdint>
#include <optional>
#include <set>
#include <vector>

#include "cbg/game.hpp"
#include "cbg/play.hpp"

namespace cbg {

// Yields the moves appended to a position's transcript since the last call.
class TranscriptCursor {
 public:
  void reset(const Position& p) { seen_ = p.transcript().size(); }
  template <class F>
  void drain(const Position& p, F&& f) {
    const auto& t = p.transcript();
    for (; seen_ < t.size(); ++seen_) f(t[seen_]);
  }
  // The most recent move, if any.
  static std::optional<Move> last(const Position& p) {
    if (p.transcript().empty()) return std::nullopt;
    return p.transcript().back();
  }

 private:
  std::size_t seen_ = 0;
};

// Vertices grouped by an integer key, iterable by key then index.
class DegreeBuckets {
 public:
  void clear() { buckets_.clear(); }
  void insert(int v, int key);
  void erase(int v, int key);
  void move(int v, int from, int to) {
    erase(v, from);
    insert(v, to);
  }
  int max_key() const;  // -1 when empty
  int min_key() const;  // -1 when empty
  const std::set<int>& at(int key) const;
  int size() const { return static_cast<int>(buckets_.size()); }

 private:
  std::vector<std::set<int>> buckets_;
};

// A shrinking vertex set R together with the degrees of the claimed graph
// (both players' edges) induced on R.
class InducedTracker {
 public:
  void build(const Position& p, const VertexSet& members);
  bool contains(int v) const { return v < members_.universe() && members_.test(v); }
  int degree(int v) const { return degree_[static_cast<std::size_t>(v)]; }
  int size() const { return size_; }
  std::int64_t edges() const { return edges_; }
  double average_degree() const { return size_ ? 2.0 * static_cast<double>(edges_) / size_ : 0.0; }
  int max_degree() const { return buckets_.max_key(); }
  const VertexSet& members() const { return members_; }
  const DegreeBuckets& buckets() const { return buckets_; }
  // Vertices of R with positive induced degree.
  int touched() const { return size_ - (buckets_.size() > 0 ? static_cast<int>(buckets_.at(0).size()) : 0); }

  // Record a newly claimed edge; call for every claim before removals.
  void add_edge(Edge e);
  // Drop v from R; p must already contain every edge recorded so far.
  void remove(const Position& p, int v);

 private:
  VertexSet members_;
  std::vector<int> degree_;
  DegreeBuckets buckets_;
  int size_ = 0;
  std::int64_t edges_ = 0;
};

// Vertices of the Constructor component containing v.
std::vector<int> component_of(const SimpleGraph& g, int v);

struct ComponentShape {
  enum Kind { Isolated, SingleEdge, Star, DoubleStar, Triangle, Other } kind = Other;
  // Star: center; SingleEdge: both endpoints; DoubleStar: the two centers.
  int a = -1;
  int b = -1;
  int vertices = 0;
  int edges = 0;
};
ComponentShape classify_component(const SimpleGraph& g, const std::vector<int>& comp);

// Lowest-index unclaimed edge whose endpoints both avoid `avoid`.
std::optional<Edge> lowest_legal_avoiding(const Position& p, Player side, const VertexSet& avoid);

// Throws ConfigurationError unless the rules match (H, F).
void require_game(const RuleSet& rules, const char* h, const char* f, const std::string& strategy);

}  // namespace cbg
