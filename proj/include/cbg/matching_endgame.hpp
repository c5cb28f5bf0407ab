#pragma once

#include <memory>
#include <optional>

#include "cbg/play.hpp"
#include "cbg/strategy_common.hpp"

namespace cbg {

// Constructor's matching play on a residual vertex set R after Blocker's
// move, for the two endgame situations: few touched vertices (sparse) and
// bounded claimed degree (bounded). The caller reports every claimed edge via
// observe() and removes vertices that leave R via retire().
class MatchingEndgame {
 public:
  enum class Mode { Sparse, Bounded };

  void start(const Position& p, const VertexSet& residual, Mode mode);
  void observe(Edge e) { tracker_.add_edge(e); }
  void retire(const Position& p, int v) { tracker_.remove(p, v); }

  // Constructor's reply to Blocker's last move, or nullopt when no pair of R
  // can be joined.
  std::optional<Edge> respond(const Position& p, std::optional<Move> last);

  Mode mode() const { return mode_; }
  const InducedTracker& residual() const { return tracker_; }
  bool precondition_met() const { return precondition_met_; }
  int deviations() const { return deviations_; }
  int matched() const { return matched_; }

 private:
  std::optional<Edge> partner(const Position& p, int u, int exclude, int want) const;
  std::optional<Edge> any_pair(const Position& p) const;

  InducedTracker tracker_;
  Mode mode_ = Mode::Sparse;
  bool precondition_met_ = true;
  int deviations_ = 0;
  int matched_ = 0;
  int C_ = 0;
};

// Standalone Constructor strategies for a Blocker-start game on a board with
// pre-claimed edges G. R is the set of vertices Constructor has not touched.
std::unique_ptr<Strategy> make_sparse_matching_strategy();
std::unique_ptr<Strategy> make_bounded_matching_strategy(int max_claimed_degree);

}  // namespace cbg
