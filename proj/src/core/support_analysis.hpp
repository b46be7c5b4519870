#pragma once

#include <vector>

#include "core/polytope.hpp"
#include "core/report.hpp"
#include "core/subspace.hpp"

namespace mv::geom {

// One cone of the normal fan: N(P,F) = pos(outer normals of the facets
// containing F), a pointed cone of dimension n - dim F.
struct FanCone {
  int face_id = 0;   // index into NormalFan::lattice.faces
  int face_dim = 0;
  std::vector<Vec> rays;  // generating unit facet normals
  int dim = 0;            // n - face_dim
  Vec representative;     // a unit vector in the relative interior
};

struct NormalFan {
  int ambient = 0;
  FaceLattice lattice;
  std::vector<FanCone> cones;  // all proper faces; the body itself is omitted
};

// Requires dim P = n; embed lower-dimensional bodies in their affine hull
// before calling.
NormalFan normal_fan(const Polytope& p);

// Touching cone T(P,z): the normal cone of the support face F(P,z), i.e. the
// unique fan cone whose relative interior contains z. touching_space is the
// direction space of F(P,z) = T(P,z)-perp within the face's span; its
// dimension equals dim F(P,z) = n - dim T(P,z).
struct TouchingCone {
  int face_id = 0;
  int face_dim = 0;
  std::vector<Vec> rays;
  int dim = 0;  // n - face_dim
  Mat touching_space;  // orthonormal columns spanning dir F(P,z); may be 0-col
};

TouchingCone touching_cone(const Polytope& p, const Vec& z);

// z is an r-extreme normal direction iff dim T(P,z) <= r + 1, 0 <= r <= n-1.
bool is_r_extreme(const Polytope& p, const Vec& z, int r);

// Membership of z in the support of the mixed area measure
// S(P[j], B[n-1-j]; .) with 1 <= j <= n-1: at the poles +-e_n the test is
// dim TS >= j; elsewhere additionally TS may not lie inside e_n-perp. At
// j = n-1 the plain dimension test applies everywhere.
bool is_mixed_extreme_ball(const Polytope& p, const Vec& z, int j);

// Independent decision route: construct a (j+1)-subspace E containing z and
// the vertical direction, project P into E, and test whether the support face
// of the projected body in direction z has dimension j.
bool support_membership_via_projections(const Polytope& p, const Vec& z, int j);

// Checks, over one relative-interior witness per fan cone plus the two poles,
// that membership at index k implies membership at index j <= k.
VerificationReport nesting_check(const Polytope& p, int j, int k);

}  // namespace mv::geom
