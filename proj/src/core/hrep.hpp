#pragma once

#include <vector>

#include "core/linalg.hpp"
#include "core/polytope.hpp"

namespace mv::geom {

// Result of converting {y : A y <= c} to vertex form. The feasible set must be
// bounded; it may be empty or lower-dimensional. `hull` carries the affine
// hull of the feasible set (identity chart when full-dimensional).
struct HRepVertices {
  bool feasible = false;
  std::vector<Vec> vertices;  // deduplicated, ambient coordinates
  AffineHull hull;
};

HRepVertices hrep_vertices(const Mat& a, const Vec& c);

// Facet description of a polytope inside its own affine hull: rows of `a`
// (and entries of `c`) satisfy <a_i, y> <= c_i for local coordinates y of
// points of p. Points and segments yield the obvious degenerate systems.
struct LocalHRep {
  AffineHull hull;
  Mat a;
  Vec c;
};

LocalHRep local_hrep(const Polytope& p);

// Ambient inequality description A x <= c of a polytope of any dimension
// (affine-hull equalities are emitted as paired inequalities).
void ambient_hrep(const Polytope& p, Mat& a, Vec& c);

}  // namespace mv::geom
