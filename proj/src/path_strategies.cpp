#include "cbg/path_strategies.hpp"

#include <algorithm>

#include "cbg/strategy_common.hpp"

namespace cbg {

namespace {

Edge arbitrary(const Position& p) {
  const auto e = p.lowest_unclaimed();
  if (!e) throw std::logic_error("no unclaimed edge left for an arbitrary move");
  return *e;
}

std::optional<Edge> free_edge(const Position& p, int a, int b) {
  if (a == b || p.claimed(a, b)) return std::nullopt;
  return Edge::of(a, b);
}

std::optional<Edge> constructor_edge(const Position& p, int a, int b) {
  if (a == b) return std::nullopt;
  const Edge e = Edge::of(a, b);
  if (!p.is_legal_for(Player::Constructor, e)) return std::nullopt;
  return e;
}

// Last move by `who`, if it is the most recent one.
std::optional<Edge> last_by(const Position& p, Player who) {
  const auto m = TranscriptCursor::last(p);
  if (!m || m->player != who) return std::nullopt;
  return m->edge;
}

Edge constructor_fallback(const Position& p, const char* name) {
  const auto e = p.first_legal_for(Player::Constructor);
  if (!e) throw std::logic_error(std::string(name) + " asked to move without a legal edge");
  return *e;
}

class P3P4Constructor final : public Strategy {
 public:
  std::string name() const override { return "p3p4-c"; }

  void reset(const Position& start, Player side, std::uint64_t) override {
    require_game(start.rules(), "P3", "P4", name());
    if (side != Player::Constructor) throw ConfigurationError("p3p4-c is a Constructor strategy");
    if (start.n() < 3) throw ConfigurationError("p3p4-c needs n >= 3");
    paired_ = fed_ = fallback_ = 0;
  }

  Edge choose(const Position& p) override {
    if (const auto b = last_by(p, Player::Blocker)) {
      for (int i = 0; i < 2; ++i) {
        if (!b->touches(kCenter[i]) || b->touches(kCenter[1 - i])) continue;
        if (const auto e = constructor_edge(p, b->other(kCenter[i]), kCenter[1 - i])) {
          ++paired_;
          return *e;
        }
      }
    }
    for (int y = 0; y < p.n(); ++y) {
      if (y == kCenter[0] || y == kCenter[1] || p.cons().degree(y) != 0) continue;
      if (const auto e = constructor_edge(p, y, kCenter[0])) {
        ++fed_;
        return *e;
      }
    }
    ++fallback_;
    return constructor_fallback(p, "p3p4-c");
  }

  nlohmann::json diagnostics() const override {
    return {{"v1", kCenter[0]}, {"v2", kCenter[1]}, {"paired", paired_}, {"fed_v1", fed_}, {"fallback", fallback_}};
  }

 private:
  static constexpr int kCenter[2] = {0, 1};
  int paired_ = 0;
  int fed_ = 0;
  int fallback_ = 0;
};

class P3P4Blocker final : public Strategy {
 public:
  std::string name() const override { return "p3p4-b"; }

  void reset(const Position& start, Player side, std::uint64_t) override {
    require_game(start.rules(), "P3", "P4", name());
    if (side != Player::Blocker) throw ConfigurationError("p3p4-b is a Blocker strategy");
    mode_ = Mode::Basic;
    suspended_ = false;
    trigger_ = nlohmann::json();
    pending_y_ = -1;
    balanced_moves_ = 0;
  }

  Edge choose(const Position& p) override {
    const auto c = last_by(p, Player::Constructor);
    if (!c) return arbitrary(p);

    if (mode_ == Mode::Balance) {
      if (pending_y_ >= 0) {
        const int y = pending_y_;
        const int other = centers_[1 - pending_side_];
        pending_y_ = -1;
        if (*c != Edge::of(y, other)) {
          mode_ = Mode::Basic;
          trigger_["left_balance_after"] = balanced_moves_;
          if (const auto e = free_edge(p, y, other)) return *e;
          return arbitrary(p);
        }
      }
      if (const auto e = balance_move(p)) return *e;
      mode_ = Mode::Basic;
      trigger_["left_balance_after"] = balanced_moves_;
    }

    if (!suspended_) {
      if (const auto e = try_suspend(p)) return *e;
    }
    return basic(p, *c);
  }

  nlohmann::json diagnostics() const override {
    return {{"suspended", suspended_}, {"trigger", trigger_}, {"balance_moves", balanced_moves_}};
  }

 private:
  enum class Mode { Basic, Balance };

  Edge basic(const Position& p, Edge c) const {
    const auto comp = component_of(p.cons(), c.u);
    const auto shape = classify_component(p.cons(), comp);
    if (shape.kind == ComponentShape::Star) {
      const int v = shape.a;
      for (int w = 0; w < p.n(); ++w)
        if (const auto e = free_edge(p, v, w)) return *e;
    }
    return arbitrary(p);
  }

  // Checks whether Constructor's graph is exactly two stars with at least
  // three leaves each and, if so, plays the first suspended move.
  std::optional<Edge> try_suspend(const Position& p) {
    std::vector<std::pair<int, int>> stars;  // (leaves, center)
    VertexSet seen(p.n());
    for (int v = 0; v < p.n(); ++v) {
      if (seen.test(v) || p.cons().degree(v) == 0) continue;
      const auto comp = component_of(p.cons(), v);
      for (int w : comp) seen.set(w);
      const auto shape = classify_component(p.cons(), comp);
      if (shape.kind != ComponentShape::Star || shape.edges < 3) return std::nullopt;
      stars.emplace_back(shape.edges, shape.a);
      if (stars.size() > 2) return std::nullopt;
    }
    if (stars.size() != 2) return std::nullopt;
    if (stars[0].first < stars[1].first) std::swap(stars[0], stars[1]);
    const auto [a1, v1] = stars[0];
    const auto [a2, v2] = stars[1];
    suspended_ = true;
    centers_[0] = v1;
    centers_[1] = v2;
    trigger_ = {{"a1", a1}, {"a2", a2}, {"v1", v1}, {"v2", v2}, {"case", a1 - a2 > 3 ? "i" : "ii"},
                {"round", p.cons().edge_count()}};
    if (a1 - a2 > 3) {
      for (int x = 0; x < p.n(); ++x)
        if (x != v1 && x != v2 && p.blok().has_edge(Edge::of(x, v1)) && !p.claimed(x, v2))
          return Edge::of(x, v2);
      trigger_["no_candidate"] = true;
      return arbitrary(p);
    }
    mode_ = Mode::Balance;
    if (auto e = balance_move(p)) return e;
    mode_ = Mode::Basic;
    return std::nullopt;
  }

  // Feeds an isolated vertex to the larger star's center.
  std::optional<Edge> balance_move(const Position& p) {
    const int d0 = p.cons().degree(centers_[0]);
    const int d1 = p.cons().degree(centers_[1]);
    const int side = d0 > d1 ? 0 : d1 > d0 ? 1 : (centers_[0] < centers_[1] ? 0 : 1);
    const int center = centers_[side];
    for (int y = 0; y < p.n(); ++y) {
      if (p.cons().degree(y) != 0 || y == centers_[0] || y == centers_[1] || p.claimed(center, y)) continue;
      pending_y_ = y;
      pending_side_ = side;
      ++balanced_moves_;
      return Edge::of(center, y);
    }
    return std::nullopt;
  }

  Mode mode_ = Mode::Basic;
  bool suspended_ = false;
  int centers_[2] = {-1, -1};
  int pending_y_ = -1;
  int pending_side_ = 0;
  int balanced_moves_ = 0;
  nlohmann::json trigger_;
};

class P4P5Constructor final : public Strategy {
 public:
  std::string name() const override { return "p4p5-c"; }

  void reset(const Position& start, Player side, std::uint64_t) override {
    require_game(start.rules(), "P4", "P5", name());
    if (side != Player::Constructor) throw ConfigurationError("p4p5-c is a Constructor strategy");
    if (start.n() < 4) throw ConfigurationError("p4p5-c needs n >= 4");
    stage_ = 0;
    threshold_ = p4p5_stage1_leaves(start.n());
    v_[0] = v_[1] = -1;
    stage_rounds_ = nlohmann::json::object();
  }

  Edge choose(const Position& p) override {
    if (stage_ == 0) {
      for (int a = 0; a < p.n(); ++a)
        for (int b = a + 1; b < p.n(); ++b)
          if (p.cons().degree(a) == 0 && p.cons().degree(b) == 0)
            if (const auto e = constructor_edge(p, a, b)) {
              v_[0] = a;
              v_[1] = b;
              stage_ = 1;
              return *e;
            }
      stage_ = 4;
    }
    if (stage_ == 1) {
      for (int i = 0; i < 2; ++i)
        if (leaves(p, v_[i]) >= threshold_) {
          if (i == 1) std::swap(v_[0], v_[1]);
          enter(p, 2);
          break;
        }
    }
    if (stage_ == 1) {
      if (const auto b = last_by(p, Player::Blocker))
        for (int i = 0; i < 2; ++i) {
          if (!b->touches(v_[i]) || b->touches(v_[1 - i])) continue;
          const int x = b->other(v_[i]);
          if (p.cons().degree(x) != 0) continue;
          if (const auto e = constructor_edge(p, x, v_[1 - i])) return *e;
        }
      if (const auto e = feed(p, v_[0])) return *e;
      // No isolated vertex can join v1 any more; Stage 1 cannot finish.
      enter(p, 2);
    }
    if (stage_ == 2) {
      if (const auto e = feed(p, v_[1])) return *e;
      enter(p, 3);
    }
    if (stage_ == 3) {
      if (const auto e = feed(p, v_[0])) return *e;
      enter(p, 4);
    }
    VertexSet avoid(p.n());
    if (v_[0] >= 0)
      for (int w : component_of(p.cons(), v_[0])) avoid.set(w);
    if (const auto e = lowest_legal_avoiding(p, Player::Constructor, avoid)) return *e;
    return constructor_fallback(p, "p4p5-c");
  }

  nlohmann::json diagnostics() const override {
    return {{"v1", v_[0]}, {"v2", v_[1]}, {"stage", stage_}, {"stage1_leaves", threshold_}, {"entered", stage_rounds_}};
  }

 private:
  static int leaves(const Position& p, int center) { return p.cons().degree(center) - 1; }

  void enter(const Position& p, int stage) {
    stage_ = stage;
    stage_rounds_[std::to_string(stage)] = p.cons().edge_count();
  }

  std::optional<Edge> feed(const Position& p, int center) const {
    for (int x = 0; x < p.n(); ++x)
      if (p.cons().degree(x) == 0)
        if (const auto e = constructor_edge(p, x, center)) return e;
    return std::nullopt;
  }

  int stage_ = 0;
  int threshold_ = 0;
  int v_[2] = {-1, -1};
  nlohmann::json stage_rounds_;
};

class P4P5Blocker final : public Strategy {
 public:
  std::string name() const override { return "p4p5-b"; }

  void reset(const Position& start, Player side, std::uint64_t) override {
    require_game(start.rules(), "P4", "P5", name());
    if (side != Player::Blocker) throw ConfigurationError("p4p5-b is a Blocker strategy");
    pending_.clear();
    isolations_ = 0;
  }

  Edge choose(const Position& p) override {
    const auto c = last_by(p, Player::Constructor);
    if (!c) return arbitrary(p);
    const auto comp = component_of(p.cons(), c->u);

    for (auto it = pending_.begin(); it != pending_.end(); ++it) {
      if (!std::binary_search(comp.begin(), comp.end(), it->u)) continue;
      const Pending pend = *it;
      pending_.erase(it);
      if (*c == Edge::of(pend.u, pend.w)) break;
      if (const auto e = free_edge(p, pend.u, pend.w)) {
        ++isolations_;
        return *e;
      }
      break;
    }

    const auto shape = classify_component(p.cons(), comp);
    if (shape.kind == ComponentShape::Star || shape.kind == ComponentShape::SingleEdge) {
      std::vector<int> centers{shape.a};
      if (shape.kind == ComponentShape::SingleEdge) centers.push_back(shape.b);
      const auto others = star_centers(p, comp);
      for (int a : centers)
        for (int b : others)
          if (const auto e = free_edge(p, a, b)) return *e;
      for (int a : centers)
        for (int b = 0; b < p.n(); ++b)
          if (const auto e = free_edge(p, a, b)) return *e;
      return arbitrary(p);
    }
    if (shape.kind == ComponentShape::DoubleStar) {
      int u = shape.a;
      int v = shape.b;
      if (p.cons().degree(v) > p.cons().degree(u)) std::swap(u, v);
      int pick = -1;
      for (int w = 0; w < p.n() && pick < 0; ++w)
        if (p.cons().degree(w) == 0 && !p.claimed(v, w) && p.blok().has_edge(Edge::of(u, w))) pick = w;
      for (int w = 0; w < p.n() && pick < 0; ++w)
        if (p.cons().degree(w) == 0 && w != u && !p.claimed(v, w)) pick = w;
      if (pick >= 0) {
        pending_.erase(std::remove_if(pending_.begin(), pending_.end(), [&](const Pending& q) { return q.u == u; }),
                       pending_.end());
        if (!p.claimed(u, pick)) pending_.push_back({u, pick});
        return Edge::of(v, pick);
      }
      return arbitrary(p);
    }
    return arbitrary(p);
  }

  nlohmann::json diagnostics() const override { return {{"isolations", isolations_}}; }

 private:
  struct Pending {
    int u;
    int w;
  };

  // Centers of Constructor's star components other than `skip`, largest first.
  static std::vector<int> star_centers(const Position& p, const std::vector<int>& skip) {
    std::vector<std::pair<int, int>> found;  // (-leaves, center)
    VertexSet seen(p.n());
    for (int w : skip) seen.set(w);
    for (int v = 0; v < p.n(); ++v) {
      if (seen.test(v) || p.cons().degree(v) == 0) continue;
      const auto comp = component_of(p.cons(), v);
      for (int w : comp) seen.set(w);
      const auto shape = classify_component(p.cons(), comp);
      if (shape.kind == ComponentShape::Star) {
        found.emplace_back(-shape.edges, shape.a);
      } else if (shape.kind == ComponentShape::SingleEdge) {
        found.emplace_back(-1, shape.a);
        found.emplace_back(-1, shape.b);
      }
    }
    std::sort(found.begin(), found.end());
    std::vector<int> out;
    for (const auto& [neg, c] : found) out.push_back(c);
    return out;
  }

  std::vector<Pending> pending_;
  int isolations_ = 0;
};

}  // namespace

int p4p5_stage1_leaves(int n) { return (3 * (n - 2) + 6) / 7; }

std::unique_ptr<Strategy> make_p3p4_constructor() { return std::make_unique<P3P4Constructor>(); }
std::unique_ptr<Strategy> make_p3p4_blocker() { return std::make_unique<P3P4Blocker>(); }
std::unique_ptr<Strategy> make_p4p5_constructor() { return std::make_unique<P4P5Constructor>(); }
std::unique_ptr<Strategy> make_p4p5_blocker() { return std::make_unique<P4P5Blocker>(); }

}  // namespace cbg
