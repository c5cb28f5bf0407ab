#pragma once

#include <memory>
#include <stdexcept>

#include "cbg/play.hpp"

namespace cbg {

// Raised when the K3/P5 Constructor finds no clean 5-set although enough
// isolated vertices remain; the counting argument rules this out.
struct StrategyFault : std::logic_error {
  using std::logic_error::logic_error;
};

// K3 scoring, P5 forbidden.
std::unique_ptr<Strategy> make_k3p5_constructor();
std::unique_ptr<Strategy> make_k3p5_blocker();

// Isolated-vertex count below which the Constructor stops opening components.
int k3p5_isolation_threshold(int n);

}  // namespace cbg
