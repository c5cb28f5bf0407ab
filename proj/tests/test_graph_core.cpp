#include <gtest/gtest.h>

#include <random>

#include "cbg/counting.hpp"
#include "cbg/graph.hpp"
#include "cbg/math.hpp"
#include "cbg/pattern.hpp"

using namespace cbg;

namespace {

SimpleGraph random_graph(int n, double p, std::mt19937_64& rng) {
  std::bernoulli_distribution coin(p);
  SimpleGraph g(n);
  for (int u = 0; u < n; ++u)
    for (int v = u + 1; v < n; ++v)
      if (coin(rng)) g.add_edge(Edge{u, v});
  return g;
}

SimpleGraph cycle(int n) {
  SimpleGraph g(n);
  for (int i = 0; i < n; ++i) g.add_edge(Edge::of(i, (i + 1) % n));
  return g;
}

}  // namespace

TEST(VertexSet, SetResetCountAcrossWords) {
  VertexSet s(130);
  for (int v : {0, 63, 64, 127, 129}) s.set(v);
  EXPECT_EQ(s.count(), 5);
  EXPECT_EQ(s.first(), 0);
  EXPECT_EQ(s.next(0), 63);
  EXPECT_EQ(s.next(64), 127);
  s.reset(63);
  EXPECT_EQ(s.to_vector(), (std::vector<int>{0, 64, 127, 129}));
  VertexSet t = VertexSet::full(130);
  t -= s;
  EXPECT_EQ(t.count(), 126);
}

TEST(Edge, NormalizesAndRejectsLoops) {
  EXPECT_EQ(Edge::of(5, 2), (Edge{2, 5}));
  EXPECT_THROW(Edge::of(3, 3), std::invalid_argument);
}

TEST(Edge, IndexRoundTrip) {
  const int n = 9;
  std::int64_t i = 0;
  for (int u = 0; u < n; ++u)
    for (int v = u + 1; v < n; ++v, ++i) {
      EXPECT_EQ(edge_index(n, Edge{u, v}), i);
      EXPECT_EQ(edge_at(n, i), (Edge{u, v}));
    }
  EXPECT_EQ(i, pair_count(n));
}

TEST(SimpleGraph, DegreesAndEdges) {
  SimpleGraph g(70);
  g.add_edge(Edge{0, 69});
  g.add_edge(Edge{0, 1});
  EXPECT_EQ(g.degree(0), 2);
  EXPECT_EQ(g.edge_count(), 2);
  EXPECT_TRUE(g.has_edge(69, 0));
  EXPECT_THROW(g.add_edge(Edge{0, 1}), std::invalid_argument);
  g.remove_edge(Edge{0, 1});
  EXPECT_EQ(g.edges(), (std::vector<Edge>{{0, 69}}));
  EXPECT_EQ(SimpleGraph::complete(6).edge_count(), 15);
}

TEST(Math, Binomials) {
  EXPECT_EQ(binom(5, 2), 10u);
  EXPECT_EQ(binom(3, 5), 0u);
  EXPECT_EQ(binom(3, -1), 0u);
  EXPECT_EQ(binom(60, 30), 118264581564861424ull);
  EXPECT_THROW(binom(200, 100), std::overflow_error);
  EXPECT_EQ(ceil_tolerant(3.0000000001), 3);
  EXPECT_EQ(ceil_tolerant(2.5), 3);
}

TEST(Pattern, ParsesShorthand) {
  EXPECT_EQ(Pattern::parse("K3").order(), 3);
  EXPECT_EQ(Pattern::parse("P4").size(), 3);
  EXPECT_EQ(Pattern::parse("S3").star_leaves(), 3);
  EXPECT_TRUE(Pattern::parse("K2") == Pattern::parse("S1"));
  EXPECT_TRUE(Pattern::parse("P2") == Pattern::parse("K2"));
  EXPECT_TRUE(Pattern::parse("T:0-1,1-2,1-3").is_tree());
  EXPECT_THROW(Pattern::parse("X9"), std::invalid_argument);
  const auto p = Pattern::from_edge_list_text("# path\n0 1\n1 2\n");
  EXPECT_TRUE(p.is_path());
}

TEST(Pattern, AutomorphismsMatchBruteForce) {
  for (const char* t : {"K2", "K3", "K4", "P3", "P4", "P5", "S3", "S4", "C4", "C5", "T:0-1,1-2,1-3,3-4"}) {
    const auto p = Pattern::parse(t);
    EXPECT_EQ(p.automorphisms(), brute_force_automorphisms(p)) << t;
  }
}

TEST(Counting, CopiesMatchNaiveEmbeddings) {
  std::mt19937_64 rng(42);
  const char* pats[] = {"K2", "P3", "K3", "P4", "S3", "C4", "P5", "K4", "T:0-1,1-2,1-3,3-4"};
  for (int trial = 0; trial < 30; ++trial) {
    const int n = 4 + trial % 5;
    const auto g = random_graph(n, 0.5, rng);
    for (const char* t : pats) {
      const auto h = Pattern::parse(t);
      EXPECT_EQ(count_copies(h, g), naive_embeddings(h, g) / h.automorphisms()) << t << " trial " << trial;
    }
  }
}

TEST(Counting, StarsAreBinomialSums) {
  std::mt19937_64 rng(7);
  const auto g = random_graph(20, 0.3, rng);
  for (int l = 2; l <= 4; ++l) {
    std::uint64_t want = 0;
    for (int v = 0; v < 20; ++v) want += binom(g.degree(v), l);
    EXPECT_EQ(count_stars(l, g), want);
    EXPECT_EQ(count_copies(Pattern::star(l), g), want);
  }
  EXPECT_EQ(count_stars(1, g), static_cast<std::uint64_t>(g.edge_count()));
}

TEST(Counting, CreatesCopyAgreesWithRecount) {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 20; ++trial) {
    const auto g = random_graph(7, 0.35, rng);
    for (const char* t : {"P4", "K3", "S3", "P5"}) {
      const auto f = Pattern::parse(t);
      const auto before = count_copies(f, g);
      for (int u = 0; u < 7; ++u)
        for (int v = u + 1; v < 7; ++v) {
          if (g.has_edge(u, v)) continue;
          const auto after = count_copies(f, g.with_edge(Edge{u, v}));
          EXPECT_EQ(creates_copy(f, g, Edge{u, v}), after > before);
          EXPECT_EQ(count_copies_through(f, g, Edge{u, v}), after - before);
        }
    }
  }
}

TEST(Counting, LargeCycle) {
  const auto g = cycle(10000);
  EXPECT_EQ(count_copies(Pattern::path(3), g), 10000u);
  EXPECT_EQ(count_copies(Pattern::path(4), g), 10000u);
  EXPECT_EQ(count_copies(Pattern::clique(3), g), 0u);
  EXPECT_EQ(girth(g), 10000);
}

TEST(Counting, DistanceBallAndGirth) {
  const auto g = cycle(8);
  EXPECT_EQ(distance_ball(g, 0, 2).to_vector(), (std::vector<int>{1, 2, 6, 7}));
  EXPECT_EQ(girth(SimpleGraph(5)), kInfiniteGirth);
  EXPECT_EQ(girth(SimpleGraph::complete(4)), 3);
}
