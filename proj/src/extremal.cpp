#include "cbg/extremal.hpp"

#include <bit>
#include <stdexcept>

#include "cbg/small_board.hpp"
#include "cbg/solver.hpp"

namespace cbg {

ExtremalResult extremal_bruteforce(int n, const Pattern& h, const Pattern& f) {
  if (n > kMaxSmallBoard) throw std::invalid_argument("extremal brute force supports at most 8 vertices");
  const CopyIndex hi(h, n);
  const CopyIndex fi(f, n);
  const int pairs = static_cast<int>(pair_count(n));
  const EdgeMask all = full_mask(n);
  int best = -1;
  EdgeMask best_graph = 0;
  std::uint64_t nodes = 0;

  // Edges below `next` are decided; `closed` holds the rejected ones.
  auto rec = [&](auto&& self, EdgeMask g, EdgeMask closed, int next) -> void {
    ++nodes;
    const EdgeMask open = all & ~g & ~closed & ~((EdgeMask{1} << next) - 1);
    if (hi.achievable(g, open) <= best) return;
    if (next == pairs) {
      best = hi.count_in(g);
      best_graph = g;
      return;
    }
    const EdgeMask bit = EdgeMask{1} << next;
    if (!fi.completes_any(g, next)) self(self, g | bit, closed, next + 1);
    self(self, g, closed | bit, next + 1);
  };
  rec(rec, 0, 0, 0);
  return {best, graph_of_mask(n, best_graph), nodes};
}

BoundsCheck solve_value_bounds_check(const RuleSet& rules) {
  BoundsCheck c;
  const SolveOutcome s = solve(rules, SolverOptions{.canonical = rules.n >= 6});
  if (!s.value) throw std::runtime_error("solver did not finish for " + rules.describe());
  c.game_value = *s.value;
  c.ex_value = extremal_bruteforce(rules.n, rules.H, rules.F).value;
  c.upper_ok = c.game_value <= c.ex_value;
  if (rules.H.order() == 2) {
    c.ex_f = c.ex_value;
    // 2g >= ex(n, F) avoids rounding.
    c.lower_ok = 2 * c.game_value >= c.ex_f;
  }
  return c;
}

}  // namespace cbg
