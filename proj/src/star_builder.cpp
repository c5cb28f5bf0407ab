#include "cbg/star_builder.hpp"

#include <set>

#include "cbg/math.hpp"
#include "cbg/matching_endgame.hpp"
#include "cbg/strategy_common.hpp"

namespace cbg {

namespace {

enum class Phase { One, Two, Three, Endgame, Done };

const char* phase_name(Phase p) {
  switch (p) {
    case Phase::One: return "1";
    case Phase::Two: return "2";
    case Phase::Three: return "3";
    case Phase::Endgame: return "endgame";
    case Phase::Done: return "done";
  }
  return "?";
}

class StarBuilder final : public Strategy {
 public:
  explicit StarBuilder(const StarBuilderOptions& o) : opts_(o), requested_k_(o.k) {
    if (o.k < 0) throw ConfigurationError("star-builder needs k >= 1");
    if (o.eps < 0) throw ConfigurationError("star-builder needs eps > 0");
  }

  std::string name() const override { return "star-builder"; }

  void reset(const Position& start, Player side, std::uint64_t) override {
    if (side != Player::Constructor) throw ConfigurationError("star-builder is a Constructor strategy");
    const auto leaves = start.rules().F.star_leaves();
    opts_.k = requested_k_ == 0 && leaves ? *leaves - 1 : requested_k_;
    const int k = opts_.k;
    if (k < 1 || leaves != k + 1)
      throw ConfigurationError("star-builder with k=" + std::to_string(k) + " needs F = S" + std::to_string(k + 1) +
                               ", got " + start.rules().F.name());
    n_ = start.n();
    eps_ = opts_.eps > 0 ? opts_.eps : 1.0 / (100.0 * k * k);
    danger_at_ = static_cast<int>(ceil_tolerant(eps_ * n_ / 2));
    phase_ = Phase::One;
    cdeg_.assign(static_cast<std::size_t>(n_), 0);
    dangerous_.assign(static_cast<std::size_t>(n_), false);
    buckets_.clear();
    dangerous_open_.clear();
    dangerous_count_ = 0;
    for (int v = 0; v < n_; ++v) {
      cdeg_[static_cast<std::size_t>(v)] = start.cons().degree(v);
      if (cdeg_[static_cast<std::size_t>(v)] < k) buckets_.insert(v, cdeg_[static_cast<std::size_t>(v)]);
      refresh_danger(start, v);
    }
    cursor_.reset(start);
    t1_ = t2_ = t_end_ = -1;
    case_.clear();
    degraded_ = false;
    degraded_reason_.clear();
    pending_bounded_ = false;
    lemma2_ = nlohmann::json::object();
    fallback_moves_ = 0;
  }

  Edge choose(const Position& p) override {
    absorb(p);
    if (const auto e = structured_move(p)) return *e;
    ++fallback_moves_;
    if (const auto e = phase1_pick(p)) return *e;
    const auto e = p.first_legal_move();
    if (!e) throw std::logic_error("star-builder asked to move without a legal edge");
    return *e;
  }

  nlohmann::json diagnostics() const override {
    nlohmann::json j{{"k", opts_.k},
                     {"eps", eps_},
                     {"danger_threshold", danger_at_},
                     {"dangerous_vertices", dangerous_count_},
                     {"phase", phase_name(phase_)},
                     {"t1", t1_},
                     {"t2", t2_},
                     {"t_endgame", t_end_},
                     {"case", case_},
                     {"lemma2", lemma2_},
                     {"degraded", degraded_},
                     {"fallback_moves", fallback_moves_}};
    if (degraded_) j["degraded_reason"] = degraded_reason_;
    if (phase_ == Phase::Endgame || phase_ == Phase::Done) {
      j["endgame_matched"] = endgame_.matched();
      j["endgame_deviations"] = endgame_.deviations();
      j["endgame_precondition"] = endgame_.precondition_met();
    }
    return j;
  }

 private:
  void degrade(const std::string& why) {
    if (!degraded_) degraded_reason_ = why + " (phase " + phase_name(phase_) + ")";
    degraded_ = true;
    phase_ = Phase::Done;
  }

  void refresh_danger(const Position& p, int v) {
    const auto i = static_cast<std::size_t>(v);
    if (!dangerous_[i] && p.cons().degree(v) + p.blok().degree(v) >= danger_at_) {
      dangerous_[i] = true;
      ++dangerous_count_;
    }
    if (dangerous_[i] && cdeg_[i] < opts_.k)
      dangerous_open_.insert(v);
    else
      dangerous_open_.erase(v);
  }

  // Folds the moves since our last turn into the bookkeeping.
  void absorb(const Position& p) {
    std::vector<int> touched;
    cursor_.drain(p, [&](const Move& m) {
      if (phase_ == Phase::Two || phase_ == Phase::Three) x_.add_edge(m.edge);
      if (phase_ == Phase::Endgame) endgame_.observe(m.edge);
      touched.push_back(m.edge.u);
      touched.push_back(m.edge.v);
    });
    for (int v : touched) {
      const auto i = static_cast<std::size_t>(v);
      const int d = p.cons().degree(v);
      if (d != cdeg_[i]) {
        if (cdeg_[i] < opts_.k) buckets_.erase(v, cdeg_[i]);
        if (d < opts_.k) buckets_.insert(v, d);
        cdeg_[i] = d;
      }
      refresh_danger(p, v);
    }
    for (int v : touched) {
      if (p.cons().degree(v) < opts_.k) continue;
      if (phase_ == Phase::Two || phase_ == Phase::Three) x_.remove(p, v);
      if (phase_ == Phase::Endgame) endgame_.retire(p, v);
    }
    if (pending_bounded_) {
      pending_bounded_ = false;
      start_endgame(p, MatchingEndgame::Mode::Bounded);
    }
  }

  std::optional<Edge> structured_move(const Position& p) {
    if (phase_ == Phase::One) {
      if (phase1_finished()) {
        finish_phase1(p);
      } else {
        if (auto e = phase1_pick(p)) return e;
        degrade("no Lemma-2 edge available");
        return std::nullopt;
      }
    }
    if (phase_ == Phase::Two) {
      if (x_.average_degree() < 2) {
        t2_ = round(p);
        phase_ = Phase::Three;
      } else {
        if (auto e = best_pair(p, 2 * x_.average_degree())) return e;
        degrade("no pair with degree sum >= 2d in X");
        return std::nullopt;
      }
    }
    if (phase_ == Phase::Three) {
      if (x_.average_degree() < 0.5 - opts_.delta) {
        case_ = "1";
        start_endgame(p, MatchingEndgame::Mode::Sparse);
      } else if (auto e = best_pair(p, 4)) {
        return e;
      } else if (p.rules().C() > 0) {
        case_ = "bounded";
        start_endgame(p, MatchingEndgame::Mode::Bounded);
      } else {
        const int top = x_.max_degree();
        if (top <= 1) {
          case_ = "2";
          start_endgame(p, MatchingEndgame::Mode::Bounded);
        } else if (top == 2) {
          case_ = "3";
          const int x = *x_.buckets().at(2).begin();
          const VertexSet& r = x_.members();
          for (int y = r.first(); y >= 0; y = r.next(y)) {
            if (y == x) continue;
            const Edge e = Edge::of(x, y);
            if (p.is_legal_for(Player::Constructor, e)) {
              pending_bounded_ = true;
              return e;
            }
          }
          degrade("Case 3 vertex has no available partner");
          return std::nullopt;
        } else if (top == 3) {
          case_ = "4";
          start_endgame(p, MatchingEndgame::Mode::Sparse);
        } else {
          degrade("no degree-sum-4 pair and maximum degree " + std::to_string(top));
          return std::nullopt;
        }
      }
    }
    if (phase_ == Phase::Endgame) {
      if (auto e = endgame_.respond(p, TranscriptCursor::last(p))) return e;
      phase_ = Phase::Done;
    }
    return std::nullopt;
  }

  std::int64_t round(const Position& p) const { return p.cons().edge_count(); }

  bool phase1_finished() const {
    const int lo = buckets_.min_key();
    return (lo < 0 || lo >= opts_.k - 1) && dangerous_open_.empty();
  }

  void finish_phase1(const Position& p) {
    t1_ = round(p);
    const int k = opts_.k;
    bool degrees_ok = true;
    bool deficient_total_ok = true;
    int full = 0;
    int max_deficient_total = 0;
    VertexSet x(n_);
    for (int v = 0; v < n_; ++v) {
      const int d = p.cons().degree(v);
      if (d != k - 1 && d != k) degrees_ok = false;
      if (d == k) ++full;
      if (d == k - 1) {
        x.set(v);
        const int total = d + p.blok().degree(v);
        max_deficient_total = std::max(max_deficient_total, total);
        if (total > eps_ * n_) deficient_total_ok = false;
      }
    }
    lemma2_ = {{"degrees_in_k_minus_1_k", degrees_ok},
               {"deficient_total_degree_cap", deficient_total_ok},
               {"max_deficient_total_degree", max_deficient_total},
               {"degree_k_cap", full <= eps_ * n_},
               {"degree_k_count", full},
               {"cap", eps_ * n_}};
    x_.build(p, x);
    phase_ = Phase::Two;
  }

  // Lemma-2 rule: a dangerous vertex still below k first, otherwise a
  // minimum-degree vertex; the partner has minimum Constructor degree.
  std::optional<Edge> phase1_pick(const Position& p) {
    auto partner = [&](int v) -> std::optional<Edge> {
      for (int key = 0; key < buckets_.size(); ++key)
        for (int u : buckets_.at(key)) {
          if (u == v || p.claimed(u, v)) continue;
          const Edge e = Edge::of(u, v);
          if (p.is_legal_for(Player::Constructor, e)) return e;
        }
      return std::nullopt;
    };
    bool first = true;
    auto accept = [&](std::optional<Edge> e) {
      if (e && !first && phase_ == Phase::One && !degraded_) {
        degraded_ = true;
        degraded_reason_ = "designated Lemma-2 vertex had no partner";
      }
      first = false;
      return e;
    };
    for (int v : dangerous_open_)
      if (auto e = accept(partner(v))) return e;
    for (int key = 0; key < buckets_.size(); ++key)
      for (int v : buckets_.at(key))
        if (auto e = accept(partner(v))) return e;
    return std::nullopt;
  }

  // Non-adjacent x, y in X with d(x) + d(y) >= threshold that Constructor may
  // join, preferring a vertex of maximum degree, then the largest sum.
  std::optional<Edge> best_pair(const Position& p, double threshold) const {
    const DegreeBuckets& b = x_.buckets();
    const int top = x_.max_degree();
    for (int dx = top; dx >= 0; --dx) {
      if (dx + top + 1e-9 < threshold) break;
      for (int x : b.at(dx))
        for (int dy = top; dy >= 0 && dx + dy + 1e-9 >= threshold; --dy)
          for (int y : b.at(dy)) {
            if (y == x || p.claimed(x, y)) continue;
            const Edge e = Edge::of(x, y);
            if (p.is_legal_for(Player::Constructor, e)) return e;
          }
    }
    return std::nullopt;
  }

  void start_endgame(const Position& p, MatchingEndgame::Mode mode) {
    t_end_ = round(p);
    endgame_.start(p, x_.members(), mode);
    phase_ = Phase::Endgame;
  }

  StarBuilderOptions opts_;
  int requested_k_ = 0;
  int n_ = 0;
  double eps_ = 0;
  int danger_at_ = 0;
  Phase phase_ = Phase::One;
  std::vector<int> cdeg_;
  std::vector<bool> dangerous_;
  int dangerous_count_ = 0;
  DegreeBuckets buckets_;  // Constructor degree, vertices below k only
  std::set<int> dangerous_open_;
  InducedTracker x_;
  MatchingEndgame endgame_;
  TranscriptCursor cursor_;
  bool pending_bounded_ = false;
  std::int64_t t1_ = -1, t2_ = -1, t_end_ = -1;
  std::string case_;
  nlohmann::json lemma2_;
  bool degraded_ = false;
  std::string degraded_reason_;
  int fallback_moves_ = 0;
};

}  // namespace

std::unique_ptr<Strategy> make_star_builder(const StarBuilderOptions& options) {
  return std::make_unique<StarBuilder>(options);
}

}  // namespace cbg
