#pragma once

#include <optional>
#include <vector>

#include "core/quickhull.hpp"
#include "core/subspace.hpp"

namespace mv::geom {

// Compact convex polytope in V-representation. Canonical form: vertex list is
// irredundant, deduplicated and lexicographically sorted, so equal polytopes
// compare equal componentwise. Lower-dimensional bodies (segments, points,
// faces of others) are first-class citizens.
struct Polytope {
  int ambient = 0;
  std::vector<Vec> vertices;
};

// hull(): canonicalizing constructor from an arbitrary point list.
Polytope make_polytope(int ambient, std::vector<Vec> pts);

int intrinsic_dim(const Polytope& p);
AffineHull polytope_affine_hull(const Polytope& p);

double volume(const Polytope& p);  // ambient-dimensional volume (0 if degenerate)
// dim-dimensional volume of a point set inside its own affine hull.
double relative_volume(const std::vector<Vec>& pts);

Polytope minkowski_sum(const Polytope& p, const Polytope& q);
Polytope scale(const Polytope& p, double lambda);
Polytope translate(const Polytope& p, const Vec& t);

double support_function(const Polytope& p, const Vec& direction);
// Vertices attaining the support value within tolerance (the support set).
std::vector<int> support_set(const Polytope& p, const Vec& direction);

// Orthogonal projection, returned in the subspace's own coordinates.
Polytope project(const Polytope& p, const Subspace& e);

bool contains(const Polytope& p, const Vec& x);

struct Face {
  int dim = 0;
  std::vector<int> verts;  // sorted indices into Polytope::vertices
  double rel_volume = 0.0;  // dim-volume in the face's affine hull; vertices: 1
  Vec centroid;
};

struct FaceLattice {
  int intrinsic_dim = 0;
  AffineHull hull;
  std::vector<Face> faces;  // all faces including the body itself (last)
  // For full-dimensional bodies: outward facet planes.
  std::vector<int> facet_face_ids;  // indices into `faces`, dim == n-1
  std::vector<Vec> facet_normals;
  std::vector<double> facet_offsets;
  // For bodies of dimension ambient-1: the two carrying unit normals.
  std::vector<Vec> carrying_normals;
  // Per face: which facets (indices into facet_face_ids order) contain it.
  std::vector<std::vector<int>> containing_facets;
};

FaceLattice face_lattice(const Polytope& p);

// [-1,1]^d ball approximant with declared Hausdorff distance to the unit ball.
struct BallApprox {
  Polytope body;
  double delta;
};

// Inscribed polytopal approximation of the unit ball: d=1 the segment,
// d=2 the regular 4m-gon, d=3 the m-1 times subdivided octahedron, d>=4 an
// edge-midpoint refinement of the cross-polytope.
BallApprox ball_approx(int dim, int refinement);

// Simplicial triangulation (fan from an interior point, recursively per
// facet); each simplex is a (d+1)-tuple of points. Used by volume().
void triangulate(const std::vector<Vec>& pts, std::vector<std::vector<Vec>>& out);

Polytope unit_cube(int n);          // [0,1]^n
Polytope segment(const Vec& a, const Vec& b);
Polytope standard_simplex(int n);   // conv{o, e_1, ..., e_n}

}  // namespace mv::geom
