#pragma once

#include <memory>
#include <string>
#include <vector>

#include "cbg/play.hpp"
#include "cbg/solver.hpp"
#include "cbg/star_builder.hpp"

namespace cbg {

struct StrategyOptions {
  StarBuilderOptions star;
  SolverOptions solver;
};

// Names accepted by make_strategy, in display order.
const std::vector<std::string>& strategy_names();

// Throws ConfigurationError for an unknown name.
std::unique_ptr<Strategy> make_strategy(const std::string& name, const StrategyOptions& options = {});

}  // namespace cbg
