#pragma once

#include <memory>

#include "cbg/play.hpp"

namespace cbg {

// P3 scoring, P4 forbidden: Constructor's two-star pairing strategy and
// Blocker's Basic Strategy with its one-time suspension.
std::unique_ptr<Strategy> make_p3p4_constructor();
std::unique_ptr<Strategy> make_p3p4_blocker();

// P4 scoring, P5 forbidden: Constructor's double-star strategy and Blocker's
// star/double-star responses.
std::unique_ptr<Strategy> make_p4p5_constructor();
std::unique_ptr<Strategy> make_p4p5_blocker();

// Leaves one center of the double star must reach before Stage 1 ends.
int p4p5_stage1_leaves(int n);

}  // namespace cbg
