#include <gtest/gtest.h>

#include <cmath>

#include "cbg/counting.hpp"
#include "cbg/extremal.hpp"
#include "cbg/formulas.hpp"
#include "cbg/math.hpp"

using namespace cbg;

TEST(ExStar, ClosedFormValues) {
  EXPECT_EQ(ex_star(4, 3, 2).value, 12);
  EXPECT_EQ(ex_star(5, 3, 2).value, 13);
  EXPECT_EQ(ex_star(3, 1, 1).value, 1);
  EXPECT_EQ(ex_star(3, 1, 1).regime, Regime::Exact);
}

TEST(ExStar, SmallBoardsUseCompleteGraph) {
  const auto v = ex_star(3, 3, 1);
  EXPECT_EQ(v.value, 3);
  EXPECT_FALSE(v.note.empty());
  EXPECT_EQ(ex_star(3, 4, 2).value, 3);
  EXPECT_EQ(ex_star(5, 2, 3).regime, Regime::OutOfDomain);
}

TEST(ExStar, MatchesBruteForce) {
  for (int n = 1; n <= 7; ++n)
    for (int k = 1; k <= 3; ++k)
      for (int l = 1; l <= k; ++l) {
        const int want = extremal_bruteforce(n, Pattern::star(l), Pattern::star(k + 1)).value;
        EXPECT_EQ(ex_star(n, k, l).value, want) << "n=" << n << " k=" << k << " l=" << l;
      }
}

TEST(GStar, Values) {
  EXPECT_EQ(g_star(4, 3, 2).value, 8);
  EXPECT_EQ(g_star(5, 3, 2).value, 13);
  EXPECT_EQ(g_star(4, 1, 1).value, 1);
  EXPECT_EQ(g_star(4, 1, 1).regime, Regime::Exact);
  EXPECT_EQ(g_star(100, 3, 2).regime, Regime::Asymptotic);
  EXPECT_EQ(to_string(Regime::Asymptotic), "asymptotic-regime");
}

TEST(BOfN, Values) {
  EXPECT_EQ(b_of_n(10), 12);
  EXPECT_EQ(b_of_n(2), 0);
  EXPECT_EQ(b_of_n(11), 16);
  for (int n = 2; n < 60; ++n)
    EXPECT_EQ(b_of_n(n), static_cast<std::int64_t>(binom((n - 2) / 2, 2) + binom((n - 1) / 2, 2))) << n;
}

TEST(ReferenceBounds, KnownPoints) {
  const auto k3 = reference_bounds("K3P5", 1024);
  EXPECT_EQ(k3.lower, 216);
  EXPECT_EQ(k3.upper, 256);
  EXPECT_EQ(reference_bounds("exP4P5", 10).upper, 16);
  EXPECT_NEAR(reference_bounds("P4P5", 51).lower, 392, 1e-9);
  EXPECT_THROW(reference_bounds("nope", 5), std::invalid_argument);
}

TEST(TreeCount, SimpleTrees) {
  for (int n : {10, 11, 100}) {
    for (int k = 1; k <= 4; ++k) {
      const auto e = tree_copy_count_regular(n, k, Pattern::parse("K2"));
      EXPECT_EQ(e.value, static_cast<std::int64_t>(n) * k / 2) << n << " " << k;
      EXPECT_EQ(e.odd_correction, (n * k) % 2 == 1);
    }
    EXPECT_EQ(tree_copy_count_regular(n, 2, Pattern::path(3)).value, n);
    EXPECT_EQ(tree_copy_count_regular(n, 3, Pattern::path(3)).value, 3 * n);
  }
  EXPECT_EQ(tree_copy_count_regular(20, 2, Pattern::star(3)).value, 0);
  EXPECT_THROW(tree_copy_count_regular(20, 2, Pattern::clique(3)), std::invalid_argument);
}

TEST(TreeCount, AgreesWithHighGirthRegularGraphs) {
  // The n-cycle is 2-regular with girth n.
  for (int n : {8, 13, 40}) {
    SimpleGraph g(n);
    for (int i = 0; i < n; ++i) g.add_edge(Edge::of(i, (i + 1) % n));
    for (int r = 2; r <= 5; ++r)
      EXPECT_EQ(static_cast<std::int64_t>(count_copies(Pattern::path(r), g)),
                tree_copy_count_regular(n, 2, Pattern::path(r)).value);
  }
  // The Petersen graph is 3-regular with girth 5.
  SimpleGraph p(10);
  for (int i = 0; i < 5; ++i) {
    p.add_edge(Edge::of(i, (i + 1) % 5));
    p.add_edge(Edge::of(i, i + 5));
    p.add_edge(Edge::of(5 + i, 5 + (i + 2) % 5));
  }
  ASSERT_EQ(girth(p), 5);
  for (const char* t : {"K2", "P3", "P4", "S3", "T:0-1,1-2,1-3,3-4"})
    EXPECT_EQ(static_cast<std::int64_t>(count_copies(Pattern::parse(t), p)),
              tree_copy_count_regular(10, 3, Pattern::parse(t)).value)
        << t;
}
