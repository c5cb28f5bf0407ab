#include <gtest/gtest.h>

#include <cmath>
#include <functional>
#include <random>

#include "cbg/baseline_strategies.hpp"
#include "cbg/counting.hpp"
#include "cbg/formulas.hpp"
#include "cbg/matching_endgame.hpp"
#include "cbg/path_strategies.hpp"
#include "cbg/registry.hpp"
#include "cbg/star_builder.hpp"
#include "cbg/strategy_common.hpp"
#include "cbg/triangle_strategies.hpp"

using namespace cbg;

namespace {

std::shared_ptr<const RuleSet> rules(int n, const char* h, const char* f, Player starter = Player::Constructor,
                                     std::shared_ptr<const ForbiddenNeighborhoodRule> fn = nullptr) {
  return std::make_shared<RuleSet>(n, Pattern::parse(h), Pattern::parse(f), starter, std::move(fn));
}

// Plays a fixed list of edges, then asks `then` (lowest unclaimed pair by
// default). Records the legal edges at the first unscripted move.
class Scripted : public Strategy {
 public:
  explicit Scripted(std::vector<Edge> script, std::function<Edge(const Position&)> then = nullptr)
      : script_(std::move(script)), then_(std::move(then)) {}
  std::string name() const override { return "scripted"; }
  void reset(const Position&, Player side, std::uint64_t) override {
    side_ = side;
    next_ = 0;
    branch_.clear();
    branched_ = false;
  }
  Edge choose(const Position& p) override {
    if (next_ < script_.size()) return script_[next_++];
    if (!branched_) {
      branched_ = true;
      branch_ = p.legal_moves_for(side_);
    }
    if (then_) return then_(p);
    return *p.first_legal_move();
  }
  const std::vector<Edge>& branch() const { return branch_; }

 private:
  std::vector<Edge> script_;
  std::function<Edge(const Position&)> then_;
  Player side_ = Player::Constructor;
  std::size_t next_ = 0;
  std::vector<Edge> branch_;
  bool branched_ = false;
};

PlayOptions blocker_opens(int n, const std::vector<Edge>& pre_claimed) {
  PlayOptions o;
  o.use_initial = true;
  o.initial_cons = SimpleGraph(n);
  o.initial_blok = SimpleGraph::from_edges(n, pre_claimed);
  o.first_to_move = Player::Blocker;
  return o;
}

// Smallest Constructor edge count over every Blocker move sequence.
std::int64_t worst_matching(const std::shared_ptr<const RuleSet>& r, const PlayOptions& o,
                            const std::function<std::unique_ptr<Strategy>()>& make, std::vector<Edge> script = {}) {
  auto c = make();
  Scripted b(script);
  const auto g = play(r, *c, b, 0, o);
  EXPECT_EQ(replay_audit(g), "");
  if (b.branch().empty()) return g.final_cons.edge_count();
  std::int64_t worst = INT64_MAX;
  for (const Edge e : b.branch()) {
    auto next = script;
    next.push_back(e);
    worst = std::min(worst, worst_matching(r, o, make, next));
  }
  return worst;
}

Edge highest_unclaimed(const Position& p) {
  for (int u = p.n() - 1; u >= 0; --u)
    for (int v = p.n() - 1; v > u; --v)
      if (!p.claimed(u, v)) return Edge{u, v};
  throw std::logic_error("board full");
}

// At most two vertex-disjoint stars covering every vertex. One spanning star
// is the degenerate case where the second center ends up a leaf.
bool two_spanning_stars(const SimpleGraph& g) {
  const int n = g.order();
  VertexSet seen(n);
  int components = 0;
  for (int v = 0; v < n; ++v) {
    if (seen.test(v)) continue;
    const auto comp = component_of(g, v);
    for (int w : comp) seen.set(w);
    if (comp.size() < 2) return false;
    if (classify_component(g, comp).kind != ComponentShape::Star && comp.size() > 2) return false;
    ++components;
  }
  return components <= 2;
}

}  // namespace

// Matching endgames.

TEST(MatchingSparse, BaseCaseTakesAnEdge) {
  auto r = rules(3, "K2", "S2", Player::Blocker);
  const auto worst = worst_matching(r, blocker_opens(3, {{0, 1}}), [] { return make_sparse_matching_strategy(); });
  EXPECT_GE(worst, 1);
}

TEST(MatchingSparse, SixVerticesAgainstEveryBlocker) {
  auto r = rules(6, "K2", "S2", Player::Blocker);
  const auto worst = worst_matching(r, blocker_opens(6, {}), [] { return make_sparse_matching_strategy(); });
  EXPECT_GE(worst, 2);
}

TEST(MatchingSparse, AnswersTouchedEndpointWithFreshVertex) {
  auto r = rules(4, "K2", "S2", Player::Blocker);
  auto c = make_sparse_matching_strategy();
  Scripted b({{0, 2}});
  const auto g = play(r, *c, b, 0, blocker_opens(4, {{0, 1}}));
  ASSERT_GE(g.transcript.size(), 2u);
  EXPECT_EQ(g.transcript[1].edge, (Edge{0, 3}));
  EXPECT_FALSE(g.reports["constructor"]["degraded"].get<bool>());
}

TEST(MatchingBounded, ClaimsThirdTriangleEdge) {
  for (const Edge opener : {Edge{0, 2}, Edge{1, 2}}) {
    auto r = rules(3, "K2", "S2", Player::Blocker);
    auto c = make_bounded_matching_strategy(1);
    Scripted b({opener});
    const auto g = play(r, *c, b, 0, blocker_opens(3, {{0, 1}}));
    ASSERT_GE(g.transcript.size(), 2u);
    const Edge third = opener == Edge{0, 2} ? Edge{1, 2} : Edge{0, 2};
    EXPECT_EQ(g.transcript[1].edge, third);
  }
}

TEST(MatchingBounded, FiveVerticesCoverFour) {
  auto r = rules(5, "K2", "S2", Player::Blocker);
  const auto worst = worst_matching(r, blocker_opens(5, {}), [] { return make_bounded_matching_strategy(0); });
  EXPECT_GE(worst, 2);
}

TEST(MatchingBounded, VacuousCaseStaysLegal) {
  auto r = rules(4, "K2", "S2", Player::Blocker);
  const auto worst =
      worst_matching(r, blocker_opens(4, {{0, 1}, {0, 2}, {1, 3}}), [] { return make_bounded_matching_strategy(2); });
  EXPECT_GE(worst, 0);
}

TEST(MatchingBounded, LargeBoardsVersusRandom) {
  for (int n : {50, 51}) {
    auto r = rules(n, "K2", "S2", Player::Blocker);
    auto c = make_bounded_matching_strategy(0);
    auto b = make_random_strategy();
    const auto g = play(r, *c, *b, 17, blocker_opens(n, {}));
    EXPECT_GE(g.final_cons.edge_count(), (n - 2) / 2) << n;
  }
}

// P3/P4.

TEST(P3P4Constructor, MirrorsCenterMoves) {
  auto r = rules(10, "P3", "P4");
  auto c = make_p3p4_constructor();
  Scripted b({{0, 5}, {6, 7}});
  const auto g = play(r, *c, b, 0);
  ASSERT_GE(g.transcript.size(), 4u);
  EXPECT_TRUE(g.transcript[0].edge.touches(0));
  EXPECT_EQ(g.transcript[2].edge, (Edge{1, 5}));
  const Edge reply = g.transcript[4].edge;
  EXPECT_TRUE(reply.touches(0));
  SimpleGraph before(10);
  for (int i : {0, 2}) before.add_edge(g.transcript[static_cast<std::size_t>(i)].edge);
  EXPECT_EQ(before.degree(reply.other(0)), 0);
}

TEST(P3P4Constructor, BuildsTwoSpanningStars) {
  const int n = 40;
  for (const char* opp : {"random", "greedy", "p3p4-b"}) {
    for (std::uint64_t s = 0; s < 5; ++s) {
      auto c = make_p3p4_constructor();
      auto b = make_strategy(opp);
      const auto g = play(rules(n, "P3", "P4"), *c, *b, s);
      EXPECT_TRUE(two_spanning_stars(g.final_cons)) << opp << " seed " << s;
      EXPECT_GE(static_cast<std::int64_t>(g.score), b_of_n(n)) << opp;
    }
  }
  EXPECT_EQ(b_of_n(40), 342);
}

TEST(P3P4Blocker, BlocksAtTheStarCenter) {
  auto r = rules(10, "P3", "P4");
  Scripted c({{0, 1}}, [](const Position& p) {
    for (int v = 1; v < p.n(); ++v)
      if (p.is_legal(Edge{0, v})) return Edge{0, v};
    return *p.first_legal_move();
  });
  auto b = make_p3p4_blocker();
  const auto g = play(r, c, *b, 0);
  ASSERT_GE(g.transcript.size(), 4u);
  EXPECT_TRUE(g.transcript[3].edge.touches(0));
}

TEST(P3P4Blocker, HoldsRandomConstructorToB) {
  for (std::uint64_t s = 0; s < 10; ++s) {
    auto c = make_random_strategy();
    auto b = make_p3p4_blocker();
    const auto g = play(rules(40, "P3", "P4"), *c, *b, s);
    EXPECT_LE(static_cast<std::int64_t>(g.score), 342) << s;
  }
}

// P4/P5.

TEST(P4P5Constructor, MirrorsInStageOne) {
  auto r = rules(30, "P4", "P5");
  auto c = make_p4p5_constructor();
  Scripted b({{1, 5}});
  const auto g = play(r, *c, b, 0);
  ASSERT_EQ(g.transcript[0].edge, (Edge{0, 1}));
  EXPECT_EQ(g.transcript[2].edge, (Edge{0, 5}));
}

TEST(P4P5Constructor, StageThreshold) {
  EXPECT_EQ(p4p5_stage1_leaves(9), 3);
  EXPECT_EQ(p4p5_stage1_leaves(700), 300);
  EXPECT_EQ(p4p5_stage1_leaves(16), 6);
}

TEST(P4P5Constructor, LargeDoubleStarVersusRandom) {
  const int n = 200;
  const double bound = 8.0 * (n - 2) * (n - 2) / 49 - 3.0 * n;
  for (std::uint64_t s = 0; s < 3; ++s) {
    auto c = make_p4p5_constructor();
    auto b = make_random_strategy();
    const auto g = play(rules(n, "P4", "P5"), *c, *b, s);
    EXPECT_GE(static_cast<double>(g.score), bound) << s;
    EXPECT_GE(g.reports["constructor"]["stage"].get<int>(), 2);
  }
}

TEST(P4P5Blocker, IsolatesAfterDoubleStar) {
  auto r = rules(12, "P4", "P5");
  auto b = make_p4p5_blocker();
  Scripted c({{0, 1}, {2, 3}}, [](const Position& p) { return *p.first_legal_move(); });
  const auto g = play(r, c, *b, 0);
  EXPECT_EQ(replay_audit(g), "");
  EXPECT_TRUE(g.final_cons.edge_count() > 0);
}

TEST(P4P5Blocker, HoldsGreedyConstructor) {
  const int n = 200;
  auto c = make_greedy_strategy();
  auto b = make_p4p5_blocker();
  const auto g = play(rules(n, "P4", "P5"), *c, *b, 0);
  EXPECT_LE(static_cast<double>(g.score), 4.0 * n * n / 23 + 3 * std::pow(n, 1.5));
}

// K3/P5.

TEST(K3P5Blocker, ClosesThreeVertexComponent) {
  auto r = rules(10, "K3", "P5");
  Scripted c({{0, 1}, {3, 4}, {4, 5}});
  auto b = make_k3p5_blocker();
  const auto g = play(r, c, *b, 0);
  ASSERT_GE(g.transcript.size(), 6u);
  EXPECT_EQ(g.transcript[5].edge, (Edge{3, 5}));
}

TEST(K3P5Blocker, ClaimsInsideFourVertexComponent) {
  auto r = rules(12, "K3", "P5");
  auto b = make_k3p5_blocker();
  // A 4-vertex star after Blocker has answered the path at 8-9-10.
  Scripted c({{8, 9}, {9, 10}, {9, 11}});
  const auto g = play(r, c, *b, 0);
  ASSERT_GE(g.transcript.size(), 6u);
  const Edge e = g.transcript[5].edge;
  EXPECT_TRUE(e.u >= 8 && e.v >= 8) << to_string(e);
  EXPECT_FALSE(g.final_cons.has_edge(e));
}

TEST(K3P5Blocker, CapsTrianglesAtQuarter) {
  const int n = 256;
  for (const char* opp : {"random", "greedy", "k3p5-c"}) {
    auto c = make_strategy(opp);
    auto b = make_k3p5_blocker();
    const auto g = play(rules(n, "K3", "P5"), *c, *b, 1);
    EXPECT_LE(g.score, static_cast<std::uint64_t>(n / 4)) << opp;
  }
}

TEST(K3P5Constructor, ClosesTriangleWhenFree) {
  auto r = rules(30, "K3", "P5");
  auto c = make_k3p5_constructor();
  Scripted b({}, highest_unclaimed);
  const auto g = play(r, *c, b, 0);
  SimpleGraph first(30);
  for (int i : {0, 2, 4}) first.add_edge(g.transcript[static_cast<std::size_t>(i)].edge);
  EXPECT_EQ(count_copies(Pattern::clique(3), first), 1u);
}

TEST(K3P5Constructor, ExtendsWhenTriangleBlocked) {
  auto r = rules(30, "K3", "P5");
  auto c = make_k3p5_constructor();
  // Close the open path as soon as Constructor has two edges; otherwise stay away.
  Scripted b({}, [](const Position& p) {
    if (p.cons().edge_count() == 2) {
      for (int v = 0; v < p.n(); ++v)
        if (p.cons().degree(v) == 2) {
          const auto nb = p.cons().neighbor_list(v);
          return Edge::of(nb[0], nb[1]);
        }
    }
    return highest_unclaimed(p);
  });
  const auto g = play(r, *c, b, 0);
  SimpleGraph first(30);
  for (int i : {0, 2, 4, 6}) first.add_edge(g.transcript[static_cast<std::size_t>(i)].edge);
  const int v = g.transcript[0].edge.u;
  const auto comp = component_of(first, v);
  EXPECT_EQ(comp.size(), 4u);
  EXPECT_EQ(count_copies(Pattern::clique(3), first), 1u);
}

TEST(K3P5Constructor, WithinBoundsAgainstBlocker) {
  const int n = 256;
  auto c = make_k3p5_constructor();
  auto b = make_k3p5_blocker();
  const auto g = play(rules(n, "K3", "P5"), *c, *b, 0);
  EXPECT_GE(static_cast<double>(g.score), n / 4.0 - 5 * std::sqrt(n) / 4);
  EXPECT_LE(g.score, static_cast<std::uint64_t>(n / 4));
  EXPECT_EQ(k3p5_isolation_threshold(1024), 160);
  EXPECT_EQ(k3p5_isolation_threshold(30), 28);
}

// Star builder.

namespace {

struct DegreeProfile {
  int min = 0;
  int max = 0;
  int at_k_minus_1 = 0;
};

DegreeProfile profile(const SimpleGraph& g, int k) {
  DegreeProfile d{g.min_degree(), g.max_degree(), 0};
  for (int v = 0; v < g.order(); ++v) d.at_k_minus_1 += g.degree(v) == k - 1;
  return d;
}

GameResult star_game(int n, int k, std::uint64_t seed, StarBuilderOptions o = {},
                     std::shared_ptr<const ForbiddenNeighborhoodRule> fn = nullptr, const char* h = "K2") {
  auto r = std::make_shared<RuleSet>(n, Pattern::parse(h), Pattern::star(k + 1), Player::Constructor, std::move(fn));
  auto c = make_star_builder(o);
  auto b = make_random_strategy();
  return play(r, *c, *b, seed);
}

}  // namespace

TEST(StarBuilder, FirstMoveJoinsIsolatedVertices) {
  const auto g = star_game(20, 2, 0);
  EXPECT_EQ(g.transcript[0].player, Player::Constructor);
}

TEST(StarBuilder, PostconditionAtTenThousand) {
  for (int k : {2, 3}) {
    for (std::uint64_t s = 0; s < 2; ++s) {
      const int n = 10000;
      const auto g = star_game(n, k, 100 + s);
      const auto d = profile(g.final_cons, k);
      EXPECT_GE(d.min, k - 1) << k;
      EXPECT_LE(d.max, k) << k;
      EXPECT_LE(d.at_k_minus_1, (n * k) % 2 == 0 ? 2 : 1) << k;
      EXPECT_FALSE(g.reports["constructor"]["degraded"].get<bool>());
    }
  }
}

TEST(StarBuilder, OddProductLeavesOneDeficientVertex) {
  const int n = 10001;
  const int k = 3;
  const auto g = star_game(n, k, 5);
  const auto d = profile(g.final_cons, k);
  EXPECT_GE(d.min, k - 1);
  EXPECT_LE(d.at_k_minus_1, 1);
}

TEST(StarBuilder, PhaseOneExitConditions) {
  struct Case {
    int k;
    double eps;
  };
  for (const Case cs : {Case{2, 0}, Case{3, 0.01}}) {
    StarBuilderOptions o;
    o.eps = cs.eps;
    const auto g = star_game(10000, cs.k, 77, o);
    const auto& l2 = g.reports["constructor"]["lemma2"];
    ASSERT_FALSE(l2.empty());
    EXPECT_TRUE(l2["degrees_in_k_minus_1_k"].get<bool>()) << cs.k;
    EXPECT_TRUE(l2["deficient_total_degree_cap"].get<bool>()) << cs.k;
    EXPECT_TRUE(l2["degree_k_cap"].get<bool>()) << cs.k << " count " << l2["degree_k_count"];
  }
}

TEST(StarBuilder, ReportsPhaseBoundaries) {
  for (int k : {2, 3}) {
    StarBuilderOptions o;
    o.eps = k == 3 ? 0.01 : 0;
    const auto g = star_game(10000, k, 31, o);
    const auto& d = g.reports["constructor"];
    const auto c = d["case"].get<std::string>();
    EXPECT_TRUE(c == "1" || c == "2" || c == "3" || c == "4" || c == "bounded") << c;
    EXPECT_EQ(d["phase"], "endgame");
    EXPECT_LE(d["t1"].get<int>(), d["t2"].get<int>());
    EXPECT_LE(d["t2"].get<int>(), d["t_endgame"].get<int>());
    EXPECT_TRUE(d["endgame_precondition"].get<bool>());
  }
}

TEST(StarBuilder, SmallBoardsStayInPhaseOne) {
  // At n = 500 the danger threshold is 1, so every vertex is dangerous at once.
  const auto g = star_game(500, 2, 3);
  EXPECT_EQ(g.reports["constructor"]["phase"], "1");
  EXPECT_GE(g.final_cons.min_degree(), 1);
  EXPECT_LE(g.final_cons.max_degree(), 2);
}

TEST(StarBuilder, DistanceBallRuleKeepsGirth) {
  const auto t = Pattern::path(4);
  const auto rule = DistanceBallRule::for_tree(3, t);
  const int C = 3 * 2 * 2;
  for (std::uint64_t s = 0; s < 2; ++s) {
    const auto g = star_game(2000, 3, s, {}, rule, "P4");
    const auto d = profile(g.final_cons, 3);
    EXPECT_GE(d.min, 2);
    EXPECT_LE(d.max, 3);
    EXPECT_GT(girth(g.final_cons), t.order());
    EXPECT_LE(d.at_k_minus_1, 2 + 4 * C);
  }
}

TEST(StarBuilder, InfersKFromF) {
  auto r = std::make_shared<RuleSet>(30, Pattern::parse("K2"), Pattern::parse("P4"));
  auto c = make_star_builder({});
  auto b = make_random_strategy();
  EXPECT_THROW(play(r, *c, *b, 0), ConfigurationError);
}

// Every strategy stays legal.

TEST(Registry, UnknownNameThrows) {
  EXPECT_THROW(make_strategy("nope"), ConfigurationError);
  EXPECT_EQ(strategy_names().size(), 10u);
}

TEST(Registry, WrongGameThrows) {
  auto c = make_p3p4_constructor();
  auto b = make_random_strategy();
  EXPECT_THROW(play(rules(10, "K3", "P5"), *c, *b, 0), ConfigurationError);
}

TEST(Registry, NoForfeitsAcrossRandomizedGames) {
  struct Family {
    const char* h;
    const char* f;
    std::vector<std::string> constructors;
    std::vector<std::string> blockers;
  };
  const std::vector<Family> families{
      {"P3", "P4", {"p3p4-c", "random", "greedy"}, {"p3p4-b", "random", "greedy"}},
      {"P4", "P5", {"p4p5-c", "random", "greedy"}, {"p4p5-b", "random", "greedy"}},
      {"K3", "P5", {"k3p5-c", "random", "greedy"}, {"k3p5-b", "random", "greedy"}},
      {"K2", "S3", {"star-builder", "random", "greedy"}, {"random", "greedy"}},
      {"P3", "S4", {"star-builder", "random"}, {"random", "greedy"}},
  };
  const int per_family = 10000;
  std::mt19937_64 rng(2024);
  for (const auto& fam : families) {
    for (int i = 0; i < per_family; ++i) {
      const int n = 4 + static_cast<int>(rng() % 17);
      const auto& cn = fam.constructors[rng() % fam.constructors.size()];
      const auto& bn = fam.blockers[rng() % fam.blockers.size()];
      auto c = make_strategy(cn);
      auto b = make_strategy(bn);
      const auto r = rules(n, fam.h, fam.f);
      GameResult g;
      ASSERT_NO_THROW(g = play(r, *c, *b, rng())) << cn << " vs " << bn << " n=" << n << " " << fam.h << "/" << fam.f;
      ASSERT_EQ(count_copies(r->F, g.final_cons), 0u);
    }
  }
}

TEST(Baselines, RandomReproducibleAndGreedyClosesTriangle) {
  auto r = rules(8, "K3", "S4");
  auto a1 = make_random_strategy();
  auto b1 = make_random_strategy();
  auto a2 = make_random_strategy();
  auto b2 = make_random_strategy();
  EXPECT_EQ(play(r, *a1, *b1, 9).transcript, play(r, *a2, *b2, 9).transcript);

  PlayOptions o;
  o.use_initial = true;
  o.initial_cons = SimpleGraph::from_edges(8, std::vector<Edge>{{0, 1}, {1, 2}});
  o.initial_blok = SimpleGraph(8);
  Position p(r, o.initial_cons, o.initial_blok, Player::Constructor);
  const auto pick = greedy_constructor_edge(p);
  ASSERT_TRUE(pick);
  EXPECT_EQ(pick->edge, (Edge{0, 2}));
  EXPECT_EQ(pick->gain, 1u);

  auto g1 = make_greedy_strategy();
  auto g2 = make_greedy_strategy();
  auto g3 = make_greedy_strategy();
  auto g4 = make_greedy_strategy();
  EXPECT_EQ(play(r, *g1, *g2, 1).transcript, play(r, *g3, *g4, 2).transcript);
}
