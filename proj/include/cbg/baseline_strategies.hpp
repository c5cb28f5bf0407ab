#pragma once

#include <memory>
#include <optional>

#include "cbg/play.hpp"
#include "cbg/solver.hpp"

namespace cbg {

// Uniform over the mover's legal edges.
std::unique_ptr<Strategy> make_random_strategy();
// Constructor: the legal edge completing most copies of H (lowest index on
// ties). Blocker: takes the edge Constructor's greedy rule would pick.
std::unique_ptr<Strategy> make_greedy_strategy();
// Exact play via the solver; boards of at most 8 vertices.
std::unique_ptr<Strategy> make_optimal_strategy(SolverOptions options = {});

// The greedy Constructor edge from p, evaluated for Constructor regardless of
// the side to move, with its gain.
struct GreedyChoice {
  Edge edge;
  std::uint64_t gain = 0;
};
std::optional<GreedyChoice> greedy_constructor_edge(const Position& p);

}  // namespace cbg
