#include "cbg/baseline_strategies.hpp"

#include <algorithm>
#include <random>

#include "cbg/counting.hpp"
#include "cbg/math.hpp"

namespace cbg {

namespace {

class RandomStrategy final : public Strategy {
 public:
  std::string name() const override { return "random"; }
  void reset(const Position&, Player side, std::uint64_t seed) override {
    side_ = side;
    rng_.seed(seed);
  }
  Edge choose(const Position& p) override {
    const auto e = p.random_legal_for(side_, rng_);
    if (!e) throw std::logic_error("random strategy asked to move without a legal edge");
    return *e;
  }

 private:
  Player side_ = Player::Constructor;
  std::mt19937_64 rng_;
};

class GreedyStrategy final : public Strategy {
 public:
  std::string name() const override { return "greedy"; }
  void reset(const Position&, Player side, std::uint64_t) override { side_ = side; }
  Edge choose(const Position& p) override {
    const auto g = greedy_constructor_edge(p);
    if (side_ == Player::Constructor) {
      if (g) return g->edge;
    } else if (g && g->gain > 0) {
      return g->edge;
    }
    const auto e = p.first_legal_for(side_);
    if (!e) throw std::logic_error("greedy strategy asked to move without a legal edge");
    return *e;
  }

 private:
  Player side_ = Player::Constructor;
};

class OptimalStrategy final : public Strategy {
 public:
  explicit OptimalStrategy(SolverOptions options) : options_(options) {}
  std::string name() const override { return "optimal"; }
  void reset(const Position& start, Player, std::uint64_t) override {
    solver_ = std::make_unique<Solver>(start.rules(), options_);
  }
  Edge choose(const Position& p) override {
    const auto e = solver_->best_move(p);
    if (!e) throw std::logic_error("optimal strategy asked to move in a finished game");
    return *e;
  }
  nlohmann::json diagnostics() const override {
    return {{"nodes", solver_ ? solver_->stats().nodes : 0}};
  }

 private:
  SolverOptions options_;
  std::unique_ptr<Solver> solver_;
};

struct Scored {
  std::uint64_t gain;
  std::int64_t index;
  Edge edge;
};

}  // namespace

std::optional<GreedyChoice> greedy_constructor_edge(const Position& p) {
  const Pattern& h = p.rules().H;
  const SimpleGraph& g = p.cons();
  const int n = p.n();
  std::vector<Scored> scored;
  auto consider = [&](int a, int b, std::uint64_t gain) {
    if (gain == 0 || p.claimed(a, b)) return;
    const Edge e = Edge::of(a, b);
    scored.push_back({gain, edge_index(n, e), e});
  };

  const auto leaves = h.star_leaves();
  if (leaves && *leaves == 1) {
    // Every legal edge completes exactly one K2.
    if (const auto e = p.first_legal_for(Player::Constructor)) return GreedyChoice{*e, 1};
    return std::nullopt;
  }
  if (h.is_triangle()) {
    for (int w = 0; w < n; ++w) {
      const auto nb = g.neighbor_list(w);
      for (std::size_t i = 0; i < nb.size(); ++i)
        for (std::size_t j = i + 1; j < nb.size(); ++j)
          if (!p.claimed(nb[i], nb[j])) consider(nb[i], nb[j], count_copies_through(h, g, Edge::of(nb[i], nb[j])));
    }
  } else {
    // Only pairs with a non-isolated endpoint can complete a connected H; an
    // isolated partner is represented by the lowest one still free.
    std::vector<int> active;
    std::vector<int> isolated;
    for (int v = 0; v < n; ++v) (g.degree(v) > 0 ? active : isolated).push_back(v);
    const bool p4 = h.is_path() && h.order() == 4;
    std::vector<std::int64_t> s(static_cast<std::size_t>(n), 0);
    if (p4)
      for (int v : active) for_each_bit(g.row(v), [&](int w) { s[static_cast<std::size_t>(v)] += g.degree(w) - 1; });
    auto gain_of = [&](int a, int b) -> std::uint64_t {
      if (leaves) return binom(g.degree(a), *leaves - 1) + binom(g.degree(b), *leaves - 1);
      if (p4) {
        const auto ra = g.row(a);
        const auto rb = g.row(b);
        std::int64_t c = 0;
        for (std::size_t w = 0; w < ra.size(); ++w) c += std::popcount(ra[w] & rb[w]);
        const std::int64_t v = static_cast<std::int64_t>(g.degree(a)) * g.degree(b) - 3 * c +
                               s[static_cast<std::size_t>(a)] + s[static_cast<std::size_t>(b)];
        return static_cast<std::uint64_t>(v);
      }
      return count_copies_through(h, g, Edge::of(a, b));
    };
    for (std::size_t i = 0; i < active.size(); ++i) {
      const int a = active[i];
      for (std::size_t j = i + 1; j < active.size(); ++j) consider(a, active[j], gain_of(a, active[j]));
      for (int b : isolated)
        if (!p.claimed(a, b)) {
          consider(a, b, gain_of(a, b));
          break;
        }
    }
  }
  std::sort(scored.begin(), scored.end(), [](const Scored& x, const Scored& y) {
    return x.gain != y.gain ? x.gain > y.gain : x.index < y.index;
  });
  for (const Scored& s : scored)
    if (p.is_legal_for(Player::Constructor, s.edge)) return GreedyChoice{s.edge, s.gain};
  if (const auto e = p.first_legal_for(Player::Constructor)) return GreedyChoice{*e, 0};
  return std::nullopt;
}

std::unique_ptr<Strategy> make_random_strategy() { return std::make_unique<RandomStrategy>(); }
std::unique_ptr<Strategy> make_greedy_strategy() { return std::make_unique<GreedyStrategy>(); }
std::unique_ptr<Strategy> make_optimal_strategy(SolverOptions options) {
  return std::make_unique<OptimalStrategy>(options);
}

}  // namespace cbg
