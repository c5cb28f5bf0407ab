#pragma once

#include <cstdint>
#include <vector>

#include "cbg/graph.hpp"
#include "cbg/pattern.hpp"

namespace cbg {

using EdgeMask = std::uint32_t;

inline constexpr int kMaxSmallBoard = 8;

// Every copy of a pattern inside K_n, each stored as a mask over edge indices.
// Built by enumerating injective vertex maps, independently of count_copies.
class CopyIndex {
 public:
  CopyIndex(const Pattern& p, int n);

  int n() const { return n_; }
  const std::vector<EdgeMask>& copies() const { return copies_; }
  // Copies containing edge i, with edge i itself removed from the mask.
  const std::vector<EdgeMask>& rests_through(int i) const { return through_[static_cast<std::size_t>(i)]; }

  int count_in(EdgeMask g) const;
  // Copies of the pattern completed by adding edge i to g.
  int completed_by(EdgeMask g, int i) const;
  bool completes_any(EdgeMask g, int i) const;
  // Copies that lie inside g | open.
  int achievable(EdgeMask g, EdgeMask open) const;

 private:
  int n_;
  std::vector<EdgeMask> copies_;
  std::vector<std::vector<EdgeMask>> through_;
};

EdgeMask full_mask(int n);
EdgeMask mask_of(int n, const SimpleGraph& g);
SimpleGraph graph_of_mask(int n, EdgeMask m);

}  // namespace cbg
