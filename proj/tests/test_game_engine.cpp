#include <gtest/gtest.h>

#include <random>

#include "cbg/baseline_strategies.hpp"
#include "cbg/counting.hpp"
#include "cbg/game.hpp"
#include "cbg/play.hpp"

using namespace cbg;

namespace {

std::shared_ptr<const RuleSet> rules(int n, const char* h, const char* f,
                                     std::shared_ptr<const ForbiddenNeighborhoodRule> fn = nullptr) {
  return std::make_shared<RuleSet>(n, Pattern::parse(h), Pattern::parse(f), Player::Constructor, std::move(fn));
}

// Always proposes the pair {0, 1}.
class Stubborn : public Strategy {
 public:
  std::string name() const override { return "stubborn"; }
  void reset(const Position&, Player, std::uint64_t) override {}
  Edge choose(const Position&) override { return Edge{0, 1}; }
};

}  // namespace

TEST(Position, RejectsClaimedAndForbidden) {
  Position p(rules(5, "P3", "P4"));
  p.play(Edge{0, 1});
  EXPECT_EQ(p.to_move(), Player::Blocker);
  EXPECT_EQ(p.check(Edge{0, 1}), Verdict::Claimed);
  p.play(Edge{3, 4});
  p.play(Edge{1, 2});
  p.play(Edge{0, 4});
  EXPECT_EQ(p.check(Edge{2, 3}), Verdict::CreatesForbidden);
  EXPECT_EQ(p.check(Edge{0, 3}), Verdict::CreatesForbidden);
  EXPECT_EQ(p.check(Edge{0, 2}), Verdict::Ok);
  EXPECT_THROW(p.play(Edge{2, 3}), IllegalMove);
  EXPECT_EQ(p.check(Edge{0, 9}), Verdict::OutOfRange);
}

TEST(Position, BlockerMayTakeAnyUnclaimedPair) {
  Position p(rules(4, "K2", "S2"));
  p.play(Edge{0, 1});
  EXPECT_TRUE(p.is_legal_for(Player::Blocker, Edge{1, 2}));
  EXPECT_FALSE(p.is_legal_for(Player::Constructor, Edge{1, 2}));
}

TEST(Position, LegalMovesMatchDirectCheck) {
  std::mt19937_64 rng(3);
  for (const char* f : {"S3", "P4", "P5", "K3"}) {
    Position p(rules(9, "K2", f));
    while (!p.is_terminal()) {
      std::vector<Edge> want;
      for (int u = 0; u < 9; ++u)
        for (int v = u + 1; v < 9; ++v) {
          const Edge e{u, v};
          if (p.claimed(e)) continue;
          if (p.to_move() == Player::Blocker || !creates_copy(p.rules().F, p.cons(), e)) want.push_back(e);
        }
      EXPECT_EQ(p.legal_moves(), want) << f;
      p.play(*p.random_legal_move(rng));
    }
    EXPECT_EQ(count_copies(p.rules().F, p.cons()), 0u);
  }
}

TEST(Position, TerminalWhenConstructorStuck) {
  Position p(rules(4, "K2", "S2"));
  p.play(Edge{0, 1});
  EXPECT_FALSE(p.is_terminal());
  p.play(Edge{2, 3});
  EXPECT_TRUE(p.is_terminal());
}

TEST(Position, InitialGraphsValidated) {
  auto r = rules(4, "K2", "P3");
  auto c = SimpleGraph::from_edges(4, std::vector<Edge>{{0, 1}, {1, 2}});
  EXPECT_THROW(Position(r, c, SimpleGraph(4), Player::Constructor), std::invalid_argument);
  auto c2 = SimpleGraph::from_edges(4, std::vector<Edge>{{0, 1}});
  EXPECT_THROW(Position(r, c2, c2, Player::Constructor), std::invalid_argument);
  EXPECT_NO_THROW(Position(r, c2, SimpleGraph(4), Player::Blocker));
}

TEST(DistanceBallRule, SymmetricAndBounded) {
  const auto rule = DistanceBallRule::for_tree(3, Pattern::parse("P4"));
  EXPECT_EQ(rule->radius(), 3);
  EXPECT_EQ(rule->bound(), 21);
  auto r = rules(40, "P4", "S4", rule);
  Position p(r);
  std::mt19937_64 rng(5);
  while (!p.is_terminal()) {
    p.audit_forbidden_neighborhoods();
    p.play(*p.random_legal_move(rng));
  }
  p.audit_forbidden_neighborhoods();
  // No Constructor edge joins two vertices within distance 3 of each other.
  for (const Edge e : p.cons().edges()) {
    auto g = p.cons();
    g.remove_edge(e);
    EXPECT_FALSE(distance_ball(g, e.u, 3).test(e.v));
  }
}

TEST(DistanceBallRule, ForbidsShortCycles) {
  auto r = rules(6, "K2", "S4", std::make_shared<DistanceBallRule>(2, 100));
  Position p(r);
  p.play(Edge{0, 1});
  p.play(Edge{4, 5});
  p.play(Edge{1, 2});
  p.play(Edge{3, 5});
  EXPECT_EQ(p.check(Edge{0, 2}), Verdict::ForbiddenNeighborhood);
  EXPECT_EQ(p.check(Edge{0, 3}), Verdict::Ok);
}

TEST(Play, ForfeitOnIllegalMove) {
  auto r = rules(5, "K2", "S2");
  Stubborn a;
  Stubborn b;
  try {
    play(r, a, b, 1);
    FAIL() << "no forfeit";
  } catch (const Forfeit& f) {
    EXPECT_EQ(f.offender, Player::Blocker);
    EXPECT_EQ(f.verdict, Verdict::Claimed);
  }
}

TEST(Play, DeterministicAndReplayable) {
  auto r = rules(12, "P3", "P4");
  auto c1 = make_random_strategy();
  auto b1 = make_random_strategy();
  auto c2 = make_random_strategy();
  auto b2 = make_random_strategy();
  PlayOptions o;
  o.incremental_score = true;
  const auto x = play(r, *c1, *b1, 99, o);
  const auto y = play(r, *c2, *b2, 99, o);
  EXPECT_EQ(x.transcript, y.transcript);
  EXPECT_EQ(x.score, count_copies(r->H, x.final_cons));
  EXPECT_EQ(x.incremental_score, x.score);
  EXPECT_EQ(replay_audit(x), "");
  const auto back = game_from_json(to_json(x));
  EXPECT_EQ(back.transcript, x.transcript);
  EXPECT_EQ(replay_audit(back), "");
}

TEST(Play, ReplayAuditCatchesTampering) {
  auto r = rules(8, "K2", "S3");
  auto c = make_greedy_strategy();
  auto b = make_random_strategy();
  auto g = play(r, *c, *b, 4);
  g.score += 1;
  EXPECT_NE(replay_audit(g), "");
}

TEST(Play, DeriveSeedSeparatesStreams) {
  EXPECT_NE(derive_seed(1, 0), derive_seed(1, 1));
  EXPECT_NE(derive_seed(1, 0), derive_seed(2, 0));
  EXPECT_EQ(derive_seed(3, 4), derive_seed(3, 4));
}
