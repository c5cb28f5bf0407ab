#include "cbg/matching_endgame.hpp"

namespace cbg {

namespace {
// Partner filters for MatchingEndgame::partner.
constexpr int kAny = 0;
constexpr int kUntouched = 1;
constexpr int kTouched = 2;
}  // namespace

void MatchingEndgame::start(const Position& p, const VertexSet& residual, Mode mode) {
  tracker_.build(p, residual);
  mode_ = mode;
  C_ = p.rules().C();
  deviations_ = 0;
  matched_ = 0;
  const int m = tracker_.size();
  if (mode == Mode::Sparse)
    precondition_met_ = 2 * tracker_.touched() <= m - C_ && m >= 4 * C_ && m >= 3;
  else
    precondition_met_ = true;
}

std::optional<Edge> MatchingEndgame::partner(const Position& p, int u, int exclude, int want) const {
  const VertexSet& r = tracker_.members();
  for (int v = r.first(); v >= 0; v = r.next(v)) {
    if (v == u || v == exclude) continue;
    const bool touched = tracker_.degree(v) > 0;
    if (want == kUntouched && touched) continue;
    if (want == kTouched && !touched) continue;
    const Edge e = Edge::of(u, v);
    if (p.is_legal_for(Player::Constructor, e)) return e;
  }
  return std::nullopt;
}

std::optional<Edge> MatchingEndgame::any_pair(const Position& p) const {
  const VertexSet& r = tracker_.members();
  for (int u = r.first(); u >= 0; u = r.next(u))
    for (int v = r.next(u); v >= 0; v = r.next(v))
      if (p.is_legal_for(Player::Constructor, Edge{u, v})) return Edge{u, v};
  return std::nullopt;
}

std::optional<Edge> MatchingEndgame::respond(const Position& p, std::optional<Move> last) {
  if (tracker_.size() < 2) return std::nullopt;
  const bool inside = last && last->player == Player::Blocker && tracker_.contains(last->edge.u) &&
                      tracker_.contains(last->edge.v);
  std::optional<Edge> pick;
  if (mode_ == Mode::Sparse) {
    const int m = tracker_.size();
    const int touched = tracker_.touched();
    if (inside) {
      const int a = last->edge.u;
      const int b = last->edge.v;
      if (tracker_.degree(a) > 0 || tracker_.degree(b) > 0) {
        // Blocker's edge meets D: pair its D endpoint with an untouched vertex.
        for (int u : {a, b})
          if (!pick && tracker_.degree(u) > 0) pick = partner(p, u, a + b - u, kUntouched);
      } else if (touched == (m - C_) / 2) {
        for (int u : {a, b})
          if (!pick) pick = partner(p, u, a + b - u, kTouched);
      } else {
        for (int u : {a, b})
          if (!pick) pick = partner(p, u, a + b - u, kAny);
      }
    } else {
      // Blocker played outside R: a free move that keeps |D| small.
      const VertexSet& r = tracker_.members();
      for (int u = r.first(); u >= 0 && !pick; u = r.next(u))
        if (tracker_.degree(u) > 0) pick = partner(p, u, -1, kUntouched);
      if (!pick && touched == 0) pick = any_pair(p);
    }
  } else {
    if (inside) {
      const int a = last->edge.u;
      const int b = last->edge.v;
      for (int x : {a, b})
        if (!pick) pick = partner(p, x, a + b - x, kAny);
    } else {
      const int top = tracker_.max_degree();
      for (int d = top; d >= 0 && !pick; --d)
        for (int x : tracker_.buckets().at(d)) {
          pick = partner(p, x, -1, kAny);
          if (pick) break;
        }
    }
  }
  if (!pick) {
    pick = any_pair(p);
    if (pick) ++deviations_;
  }
  if (pick) ++matched_;
  return pick;
}

namespace {

class MatchingStrategy final : public Strategy {
 public:
  MatchingStrategy(MatchingEndgame::Mode mode, int max_degree) : mode_(mode), max_degree_(max_degree) {}

  std::string name() const override {
    return mode_ == MatchingEndgame::Mode::Sparse ? "matching-sparse" : "matching-bounded";
  }

  void reset(const Position& start, Player side, std::uint64_t) override {
    if (side != Player::Constructor) throw ConfigurationError("matching endgames are Constructor strategies");
    VertexSet residual(start.n());
    int claimed_max = 0;
    for (int v = 0; v < start.n(); ++v) {
      if (start.cons().degree(v) == 0) residual.set(v);
      claimed_max = std::max(claimed_max, start.cons().degree(v) + start.blok().degree(v));
    }
    endgame_.start(start, residual, mode_);
    degraded_ = !endgame_.precondition_met() ||
                (mode_ == MatchingEndgame::Mode::Bounded && claimed_max > max_degree_);
    cursor_.reset(start);
  }

  Edge choose(const Position& p) override {
    std::vector<Edge> constructor_edges;
    cursor_.drain(p, [&](const Move& m) {
      endgame_.observe(m.edge);
      if (m.player == Player::Constructor) constructor_edges.push_back(m.edge);
    });
    for (const Edge& e : constructor_edges) {
      endgame_.retire(p, e.u);
      endgame_.retire(p, e.v);
    }
    if (const auto e = endgame_.respond(p, TranscriptCursor::last(p))) return *e;
    degraded_ = true;
    const auto e = p.first_legal_move();
    if (!e) throw std::logic_error("matching strategy asked to move without a legal edge");
    return *e;
  }

  nlohmann::json diagnostics() const override {
    return {{"degraded", degraded_}, {"deviations", endgame_.deviations()}, {"matched", endgame_.matched()}};
  }

 private:
  MatchingEndgame::Mode mode_;
  int max_degree_;
  MatchingEndgame endgame_;
  TranscriptCursor cursor_;
  bool degraded_ = false;
};

}  // namespace

std::unique_ptr<Strategy> make_sparse_matching_strategy() {
  return std::make_unique<MatchingStrategy>(MatchingEndgame::Mode::Sparse, 0);
}

std::unique_ptr<Strategy> make_bounded_matching_strategy(int max_claimed_degree) {
  return std::make_unique<MatchingStrategy>(MatchingEndgame::Mode::Bounded, max_claimed_degree);
}

}  // namespace cbg
