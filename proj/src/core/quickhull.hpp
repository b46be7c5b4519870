#pragma once

#include <vector>

#include "core/linalg.hpp"

namespace mv::geom {

struct HullFacet {
  Vec normal;    // outward unit normal
  double offset;  // <normal, x> == offset on the facet plane
  std::vector<int> vertex_ids;  // sorted indices into the input point list
};

struct HullResult {
  std::vector<int> vertex_ids;   // sorted hull vertex indices
  std::vector<HullFacet> facets;  // coplanar-merged facets
};

// Convex hull of a full-dimensional point set in R^d, d >= 2. The caller is
// responsible for deduplication and for reducing lower-dimensional input to
// its affine hull first. Points within tolerance of the boundary that are not
// corners are dropped (this is what makes hull() canonicalizing).
HullResult quickhull(const std::vector<Vec>& pts);

// Largest signed violation max_{p, facet}(<u,p> - b); small => valid hull.
double hull_max_violation(const std::vector<Vec>& pts, const HullResult& h);

}  // namespace mv::geom
