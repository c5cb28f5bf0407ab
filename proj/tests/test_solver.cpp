#include <gtest/gtest.h>

#include <fstream>
#include <json.hpp>
#include <random>

#include "cbg/canonical.hpp"
#include "cbg/extremal.hpp"
#include "cbg/formulas.hpp"
#include "cbg/solver.hpp"

using namespace cbg;

namespace {

const char* kPatterns[] = {"K2", "P3", "K3", "S2", "S3", "P4"};

RuleSet rules(int n, const char* h, const char* f) { return RuleSet(n, Pattern::parse(h), Pattern::parse(f)); }

}  // namespace

TEST(Solver, MatchesPlainMinimaxOnSmallBoards) {
  for (int n = 2; n <= 4; ++n)
    for (const char* h : kPatterns)
      for (const char* f : kPatterns) {
        const auto r = rules(n, h, f);
        const int want = minimax_reference(r);
        SolverOptions raw;
        SolverOptions canon;
        canon.canonical = true;
        const auto a = solve(r, raw);
        const auto b = solve(r, canon);
        ASSERT_TRUE(a.value && b.value);
        EXPECT_EQ(*a.value, want) << "n=" << n << " " << h << "/" << f;
        EXPECT_EQ(*b.value, want) << "n=" << n << " " << h << "/" << f << " canonical";
      }
}

TEST(Solver, CanonicalAgreesWithRawAtFiveAndSix) {
  for (int n = 5; n <= 6; ++n)
    for (const char* h : {"K2", "P3"})
      for (const char* f : {"S2", "S3", "P4"}) {
        const auto r = rules(n, h, f);
        SolverOptions canon;
        canon.canonical = true;
        EXPECT_EQ(solve(r).value, solve(r, canon).value) << n << " " << h << "/" << f;
      }
}

TEST(Solver, WithoutPruningAgrees) {
  const auto r = rules(5, "P3", "P4");
  SolverOptions bare;
  bare.alpha_beta = false;
  bare.use_table = false;
  EXPECT_EQ(solve(r, bare).value, solve(r).value);
}

TEST(Solver, GoldenValues) {
  std::ifstream in(CBG_GOLDEN_DIR "/solver_values.json");
  ASSERT_TRUE(in) << "missing golden file";
  const auto j = nlohmann::json::parse(in);
  ASSERT_FALSE(j["values"].empty());
  for (const auto& row : j["values"]) {
    const auto r = RuleSet(row["n"].get<int>(), Pattern::parse(row["H"].get<std::string>()),
                           Pattern::parse(row["F"].get<std::string>()));
    SolverOptions canon;
    canon.canonical = true;
    const auto out = solve(r, canon);
    ASSERT_TRUE(out.value);
    EXPECT_EQ(*out.value, row["value"].get<int>()) << row.dump();
  }
}

TEST(Solver, EdgeStarValuesAgainstClosedForm) {
  SolverOptions canon;
  canon.canonical = true;
  for (int k = 1; k <= 3; ++k)
    for (int n = 2; n <= 6; ++n) {
      const auto r = RuleSet(n, Pattern::parse("K2"), Pattern::star(k + 1));
      const auto f = g_star(n, k, 1);
      const int v = *solve(r, canon).value;
      // Upper bound: Blocker's last edge keeps the degree sum at most nk - 1.
      EXPECT_LE(v, std::max<std::int64_t>(f.value, 1)) << "n=" << n << " k=" << k;
      if (f.regime == Regime::Exact) EXPECT_EQ(v, f.value) << "n=" << n << " k=" << k;
    }
  // Small-board exceptions for k = 3.
  EXPECT_EQ(*solve(RuleSet(5, Pattern::parse("K2"), Pattern::star(4)), canon).value, 5);
  EXPECT_EQ(g_star(5, 3, 1).value, 7);
}

TEST(Solver, ValueBetweenBounds) {
  for (int n = 3; n <= 6; ++n)
    for (const char* f : {"S3", "P4", "K3"}) {
      const auto c = solve_value_bounds_check(rules(n, "K2", f));
      EXPECT_TRUE(c.ok()) << n << " " << f << " g=" << c.game_value << " ex=" << c.ex_value;
    }
}

TEST(Solver, PrincipalLineReachesValue) {
  const auto r = rules(5, "P3", "P4");
  const auto out = solve(r);
  Position p(std::make_shared<RuleSet>(r));
  for (const auto& m : out.principal_line) p.play(m.edge);
  EXPECT_TRUE(p.is_terminal());
}

TEST(Solver, NodeBudgetYieldsPartial) {
  SolverOptions o;
  o.node_budget = 10;
  const auto out = solve(rules(7, "P3", "P4"), o);
  EXPECT_FALSE(out.complete);
  EXPECT_FALSE(out.value);
}

TEST(Extremal, KnownValues) {
  EXPECT_EQ(extremal_bruteforce(5, Pattern::parse("K2"), Pattern::parse("K3")).value, 6);
  EXPECT_EQ(extremal_bruteforce(6, Pattern::parse("K2"), Pattern::parse("S3")).value, 6);
  EXPECT_EQ(extremal_bruteforce(4, Pattern::parse("P3"), Pattern::parse("S4")).value, 12);
}

TEST(Canonical, InvariantUnderRelabeling) {
  std::mt19937_64 rng(1);
  for (int trial = 0; trial < 200; ++trial) {
    const int n = 4 + trial % 5;
    const EdgeMask all = full_mask(n);
    EdgeMask cons = static_cast<EdgeMask>(rng()) & all;
    EdgeMask blok = static_cast<EdgeMask>(rng()) & all & ~cons;
    int perm[kMaxSmallBoard];
    for (int i = 0; i < n; ++i) perm[i] = i;
    std::shuffle(perm, perm + n, rng);
    const auto a = canonical_form(n, cons, blok);
    const auto b = canonical_form(n, relabel(n, cons, perm), relabel(n, blok, perm));
    ASSERT_TRUE(a.canonical && b.canonical);
    EXPECT_EQ(a.cons, b.cons);
    EXPECT_EQ(a.blok, b.blok);
  }
}
