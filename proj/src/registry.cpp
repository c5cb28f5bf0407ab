#include "cbg/registry.hpp"

#include "cbg/baseline_strategies.hpp"
#include "cbg/path_strategies.hpp"
#include "cbg/triangle_strategies.hpp"

namespace cbg {

const std::vector<std::string>& strategy_names() {
  static const std::vector<std::string> names{"star-builder", "p3p4-c", "p3p4-b", "p4p5-c", "p4p5-b",
                                              "k3p5-c",       "k3p5-b", "random", "greedy", "optimal"};
  return names;
}

std::unique_ptr<Strategy> make_strategy(const std::string& name, const StrategyOptions& options) {
  if (name == "star-builder") return make_star_builder(options.star);
  if (name == "p3p4-c") return make_p3p4_constructor();
  if (name == "p3p4-b") return make_p3p4_blocker();
  if (name == "p4p5-c") return make_p4p5_constructor();
  if (name == "p4p5-b") return make_p4p5_blocker();
  if (name == "k3p5-c") return make_k3p5_constructor();
  if (name == "k3p5-b") return make_k3p5_blocker();
  if (name == "random") return make_random_strategy();
  if (name == "greedy") return make_greedy_strategy();
  if (name == "optimal") return make_optimal_strategy(options.solver);
  throw ConfigurationError("unknown strategy '" + name + "'");
}

}  // namespace cbg
