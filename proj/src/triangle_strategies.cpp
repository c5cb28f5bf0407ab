#include "cbg/triangle_strategies.hpp"

#include <array>
#include <cmath>

#include "cbg/math.hpp"
#include "cbg/strategy_common.hpp"

namespace cbg {

namespace {

class K3P5Blocker final : public Strategy {
 public:
  std::string name() const override { return "k3p5-b"; }

  void reset(const Position& start, Player side, std::uint64_t) override {
    require_game(start.rules(), "K3", "P5", name());
    if (side != Player::Blocker) throw ConfigurationError("k3p5-b is a Blocker strategy");
    closed_ = 0;
  }

  Edge choose(const Position& p) override {
    const auto m = TranscriptCursor::last(p);
    if (m && m->player == Player::Constructor) {
      const auto comp = component_of(p.cons(), m->edge.u);
      if (comp.size() == 3 || comp.size() == 4)
        for (std::size_t i = 0; i < comp.size(); ++i)
          for (std::size_t j = i + 1; j < comp.size(); ++j)
            if (!p.claimed(comp[i], comp[j])) {
              ++closed_;
              return Edge{comp[i], comp[j]};
            }
    }
    const auto e = p.lowest_unclaimed();
    if (!e) throw std::logic_error("k3p5-b asked to move on a full board");
    return *e;
  }

  nlohmann::json diagnostics() const override { return {{"component_blocks", closed_}}; }

 private:
  int closed_ = 0;
};

class K3P5Constructor final : public Strategy {
 public:
  std::string name() const override { return "k3p5-c"; }

  void reset(const Position& start, Player side, std::uint64_t) override {
    require_game(start.rules(), "K3", "P5", name());
    if (side != Player::Constructor) throw ConfigurationError("k3p5-c is a Constructor strategy");
    threshold_ = k3p5_isolation_threshold(start.n());
    step_ = Step::Open;
    components_ = triangles3_ = triangles4_ = relabels_ = deviations_ = 0;
  }

  Edge choose(const Position& p) override {
    switch (step_) {
      case Step::Open:
        break;
      case Step::Second: {
        const auto m = TranscriptCursor::last(p);
        if (m && m->player == Player::Blocker) relabel(m->edge);
        step_ = Step::Third;
        if (auto e = take(p, x_[0], x_[2])) return *e;
        break;
      }
      case Step::Third:
        if (!p.claimed(x_[1], x_[2])) {
          step_ = Step::Open;
          ++triangles3_;
          if (auto e = take(p, x_[1], x_[2])) return *e;
          break;
        }
        step_ = Step::Fourth;
        if (auto e = take(p, x_[0], x_[3])) return *e;
        break;
      case Step::Fourth:
        step_ = Step::Open;
        ++triangles4_;
        for (int a : {1, 2})
          if (!p.claimed(x_[a], x_[3]))
            if (auto e = take(p, x_[a], x_[3])) return *e;
        break;
    }
    step_ = Step::Open;
    return open(p);
  }

  nlohmann::json diagnostics() const override {
    return {{"isolation_threshold", threshold_}, {"components", components_}, {"three_vertex", triangles3_},
            {"four_vertex", triangles4_},        {"relabels", relabels_},     {"deviations", deviations_}};
  }

 private:
  enum class Step { Open, Second, Third, Fourth };

  std::optional<Edge> take(const Position& p, int a, int b) {
    const Edge e = Edge::of(a, b);
    if (p.is_legal_for(Player::Constructor, e)) return e;
    ++deviations_;
    return std::nullopt;
  }

  // Blocker's reply inside X is moved onto v5.
  void relabel(Edge b) {
    int pos[2] = {-1, -1};
    for (int i = 0; i < 5; ++i) {
      if (x_[i] == b.u) pos[0] = i;
      if (x_[i] == b.v) pos[1] = i;
    }
    if (pos[0] < 0 || pos[1] < 0 || pos[0] == 4 || pos[1] == 4) return;
    const int swap_pos = std::max(pos[0], pos[1]);
    std::swap(x_[swap_pos], x_[4]);
    ++relabels_;
  }

  Edge open(const Position& p) {
    std::vector<int> isolated;
    for (int v = 0; v < p.n(); ++v)
      if (p.cons().degree(v) == 0) isolated.push_back(v);
    if (static_cast<int>(isolated.size()) >= threshold_) {
      if (!clean_set(p, isolated))
        throw StrategyFault("no clean 5-set among " + std::to_string(isolated.size()) + " isolated vertices");
      ++components_;
      step_ = Step::Second;
      return Edge::of(x_[0], x_[1]);
    }
    VertexSet built(p.n());
    for (int v = 0; v < p.n(); ++v)
      if (p.cons().degree(v) > 0) built.set(v);
    if (const auto e = lowest_legal_avoiding(p, Player::Constructor, built)) return *e;
    const auto e = p.first_legal_for(Player::Constructor);
    if (!e) throw std::logic_error("k3p5-c asked to move without a legal edge");
    return *e;
  }

  // Lexicographically first 5 isolated vertices spanning no claimed edge.
  bool clean_set(const Position& p, const std::vector<int>& isolated) {
    std::array<int, 5> pick{};
    auto extend = [&](auto&& self, int depth, std::size_t from) -> bool {
      if (depth == 5) return true;
      for (std::size_t i = from; i + static_cast<std::size_t>(5 - depth) <= isolated.size(); ++i) {
        const int v = isolated[i];
        bool ok = true;
        for (int j = 0; j < depth && ok; ++j) ok = !p.claimed(pick[static_cast<std::size_t>(j)], v);
        if (!ok) continue;
        pick[static_cast<std::size_t>(depth)] = v;
        if (self(self, depth + 1, i + 1)) return true;
      }
      return false;
    };
    if (!extend(extend, 0, 0)) return false;
    x_ = pick;
    return true;
  }

  int threshold_ = 0;
  Step step_ = Step::Open;
  std::array<int, 5> x_{};
  int components_ = 0;
  int triangles3_ = 0;
  int triangles4_ = 0;
  int relabels_ = 0;
  int deviations_ = 0;
};

}  // namespace

int k3p5_isolation_threshold(int n) { return static_cast<int>(ceil_tolerant(5 * std::sqrt(static_cast<double>(n)))); }

std::unique_ptr<Strategy> make_k3p5_constructor() { return std::make_unique<K3P5Constructor>(); }
std::unique_ptr<Strategy> make_k3p5_blocker() { return std::make_unique<K3P5Blocker>(); }

}  // namespace cbg
