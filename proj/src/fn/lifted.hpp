#pragma once

#include <vector>

#include "core/linalg.hpp"
#include "fn/pl_function.hpp"

namespace mv::fn {

// Lower convex hull of the lifted slope points {(a_i, b_i)}, computed inside
// the chart of aff{a_i}. Each lower facet carries one affine piece of the
// conjugate: value(a) = <slope, t> - offset in chart coordinates t.
struct LowerFacet {
  std::vector<int> piece_ids;  // sorted indices into the input piece list
  Vec slope;                   // chart coordinates, size == chart.dim()
  double offset = 0.0;
};

struct LiftedLower {
  AffineHull chart;  // a = chart.base + chart.basis * t
  std::vector<LowerFacet> facets;
  std::vector<int> vertex_ids;  // piece indices that are lower-hull corners
};

// Pieces must have pairwise-distinct slopes.
LiftedLower lifted_lower_hull(const std::vector<Piece>& pieces, int ambient);

// Ambient slope and offset of a lower facet: value(a) = <g, a> - d.
Vec facet_ambient_slope(const LiftedLower& ll, const LowerFacet& f);
double facet_ambient_offset(const LiftedLower& ll, const LowerFacet& f);

// Piece-index sets of every face of the lower surface (intersection closure
// of the facet sets plus the single-piece corners), sorted and deduplicated.
std::vector<std::vector<int>> lower_face_piece_sets(const LiftedLower& ll);

// A point where exactly the pieces in `face` are active with positive margin
// over all others; empty when the face carries no cell of the subdivision.
std::optional<Vec> face_representative(const std::vector<Piece>& pieces, int ambient,
                                       const std::vector<int>& face);

}  // namespace mv::fn
