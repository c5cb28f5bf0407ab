#pragma once

#include <cstdint>

#include "cbg/game.hpp"
#include "cbg/graph.hpp"
#include "cbg/pattern.hpp"

namespace cbg {

struct ExtremalResult {
  int value = 0;
  SimpleGraph witness;
  std::uint64_t nodes = 0;
};

// ex(n, H, F): the largest N(H, G) over F-free graphs G on n <= 8 vertices,
// by branching on edges with F-free and reachable-count pruning.
ExtremalResult extremal_bruteforce(int n, const Pattern& h, const Pattern& f);

struct BoundsCheck {
  int game_value = 0;
  int ex_value = 0;
  // ex(n, F): the K2 case, used for the lower bound when H = K2.
  int ex_f = 0;
  bool upper_ok = false;
  bool lower_ok = true;
  bool ok() const { return upper_ok && lower_ok; }
};

// g <= ex(n, H, F), and ex(n, F) / 2 <= g when H = K2.
BoundsCheck solve_value_bounds_check(const RuleSet& rules);

}  // namespace cbg
