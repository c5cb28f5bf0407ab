#pragma once

#include <cstdint>

#include "cbg/small_board.hpp"

namespace cbg {

struct CanonicalForm {
  EdgeMask cons = 0;
  EdgeMask blok = 0;
  // False when the leaf limit was hit; the masks are then the input unchanged.
  bool canonical = true;
};

// Relabels the two-coloured edge pair on n <= 8 vertices to a representative
// shared by all relabelings: colour refinement on (degree pair, neighbour
// colours), then individualization with twin pruning, keeping the smallest
// relabeled pair over all leaves.
CanonicalForm canonical_form(int n, EdgeMask cons, EdgeMask blok, int leaf_limit = 4096);

// Applies a vertex permutation (perm[v] = new label of v) to an edge mask.
EdgeMask relabel(int n, EdgeMask m, const int* perm);

}  // namespace cbg
