#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "cbg/game.hpp"
#include "cbg/small_board.hpp"

namespace cbg {

struct SolverOptions {
  bool canonical = false;
  // Abort after this many nodes; 0 means unlimited.
  std::uint64_t node_budget = 0;
  int threads = 1;
  int table_bits = 18;
  bool use_table = true;
  bool alpha_beta = true;
  int canon_leaf_limit = 4096;
  bool principal_line = true;
};

struct SolverStats {
  std::uint64_t nodes = 0;
  std::uint64_t table_hits = 0;
  std::uint64_t table_cutoffs = 0;
  std::uint64_t table_stores = 0;
  std::uint64_t canon_fallbacks = 0;
  double seconds = 0;
};

struct SolveOutcome {
  // Empty when the node budget ran out.
  std::optional<int> value;
  bool complete = false;
  std::vector<Move> principal_line;
  SolverStats stats;
};

// Exact value of the game from the given claimed edges (C = 0 only, n <= 8).
class Solver {
 public:
  Solver(const RuleSet& rules, SolverOptions options = {});
  ~Solver();
  Solver(const Solver&) = delete;
  Solver& operator=(const Solver&) = delete;

  SolveOutcome solve();
  SolveOutcome solve_from(EdgeMask cons, EdgeMask blok, Player to_move);
  // A move for the side to move that attains the game value from p.
  std::optional<Edge> best_move(const Position& p);

  const RuleSet& rules() const { return rules_; }
  const SolverStats& stats() const;

 private:
  struct Impl;
  RuleSet rules_;
  SolverOptions options_;
  Impl* impl_;
};

SolveOutcome solve(const RuleSet& rules, SolverOptions options = {});

// Plain minimax without pruning or table; reference for tests.
int minimax_reference(const RuleSet& rules);

nlohmann::json to_json(const SolveOutcome& o, const RuleSet& rules);

}  // namespace cbg
