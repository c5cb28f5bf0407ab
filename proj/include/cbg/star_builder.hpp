#pragma once

#include <memory>

#include "cbg/play.hpp"

namespace cbg {

struct StarBuilderOptions {
  // 0 takes k from F = S_{k+1}.
  int k = 0;
  // Dangerous-vertex parameter; 0 selects 1/(100k^2).
  double eps = 0;
  // Phase-3 sparsity margin: Case 1 starts once the average degree is below 1/2 - delta.
  double delta = 0.01;
};

// Constructor strategy for the S_{k+1}-free game, with or without a
// forbidden-neighbourhood rule, that ends with minimum degree k-1 and few
// vertices of degree k-1. Diagnostics record the phase boundaries, the
// Phase-1 exit conditions and any degraded fallback.
std::unique_ptr<Strategy> make_star_builder(const StarBuilderOptions& options);

}  // namespace cbg
