#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace cbg {

enum class PatternKind { Clique, Path, Star, Tree, General };

// One orbit of Aut(H) acting on oriented edges, with a representative (a, b).
struct AnchorOrbit {
  int a = 0;
  int b = 0;
  int size = 0;
};

// A small fixed graph H or F. Every pattern has at least one edge and no
// isolated vertices; Star(1), Path(2) and Clique(2) all normalize to K2.
class Pattern {
 public:
  static constexpr int kMaxOrder = 12;

  static Pattern clique(int r);
  static Pattern path(int r);
  static Pattern star(int leaves);
  static Pattern cycle(int r);
  // Classified as Tree when connected with order-1 edges, General otherwise.
  static Pattern from_edges(int order, std::vector<std::pair<int, int>> edges);

  // Shorthand tokens: K3, P4, S2, C5, T:0-1,1-2 and G:<edge list>.
  static Pattern parse(std::string_view token);
  // One "u v" pair per line, 0-based; '#' starts a comment.
  static Pattern from_edge_list_text(std::string_view text);

  PatternKind kind() const { return kind_; }
  int order() const { return order_; }
  int size() const { return static_cast<int>(edges_.size()); }
  const std::vector<std::pair<int, int>>& edges() const { return edges_; }
  std::uint16_t adjacency(int v) const { return adj_[static_cast<std::size_t>(v)]; }
  bool adjacent(int a, int b) const { return (adj_[static_cast<std::size_t>(a)] >> b) & 1U; }
  int degree(int v) const;
  int max_degree() const;
  bool connected() const { return connected_; }
  bool is_tree() const { return connected_ && size() == order_ - 1; }

  std::uint64_t automorphisms() const { return automorphisms_; }

  // Leaf count when the graph is a star (K2 counts as one leaf).
  std::optional<int> star_leaves() const { return star_leaves_; }
  bool is_triangle() const { return order_ == 3 && size() == 3; }
  bool is_path() const { return is_path_; }

  // Orbits of oriented edges under Aut(H); empty when order exceeds 8.
  const std::vector<AnchorOrbit>& anchor_orbits() const { return anchor_orbits_; }

  const std::string& name() const { return name_; }

  friend bool operator==(const Pattern& a, const Pattern& b) {
    return a.order_ == b.order_ && a.edges_ == b.edges_ && a.kind_ == b.kind_;
  }

 private:
  Pattern(PatternKind kind, int order, std::vector<std::pair<int, int>> edges, std::string name);

  PatternKind kind_ = PatternKind::General;
  int order_ = 0;
  std::vector<std::pair<int, int>> edges_;
  std::vector<std::uint16_t> adj_;
  bool connected_ = false;
  bool is_path_ = false;
  std::optional<int> star_leaves_;
  std::uint64_t automorphisms_ = 1;
  std::vector<AnchorOrbit> anchor_orbits_;
  std::string name_;
};

// Aut(H) by trying every vertex permutation; used as a test oracle.
std::uint64_t brute_force_automorphisms(const Pattern& p);

}  // namespace cbg
