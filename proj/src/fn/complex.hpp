#pragma once

#include <vector>

#include "fn/pl_function.hpp"

namespace mv::fn {

// Linearity region of one piece inside the domain.
struct ComplexCell {
  int piece = -1;        // index into the canonical piece list
  geom::Polytope body;   // ambient coordinates
  Vec gradient;          // the active ambient gradient a_i
};

// Cell decomposition of a compact-domain function: the maximal regions where
// a single piece is active. Cells tile the domain (relative volumes add up).
struct Complex {
  int ambient = 0;
  AffineHull chart;               // affine hull of the domain
  std::vector<ComplexCell> cells;
  std::vector<Vec> vertices;      // deduplicated 0-cells, ambient coordinates
};

Complex complex_of(const PLConvexFunction& f);

}  // namespace mv::fn
