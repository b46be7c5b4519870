#pragma once

#include <vector>

#include "core/polytope.hpp"

namespace mv::meas {

// Spherical polytope {u in S^{n-1} : <h,u> >= 0 for all h}; `open` switches to
// strict inequalities (only distinguishable where a whole cone lies in a
// boundary hyperplane, e.g. single-ray normal cones).
struct SphericalRegion {
  std::vector<Vec> halfspaces;  // unit normals; empty list = the whole sphere
  bool open = false;
};

// Selector for the gradient-target set A = [origin]{o} ∪ [radial]ω̃ ∪ [sphere]ω
// with ω the union of the regions and ω̃ its open radial interior
// {t·u : t ∈ (0,1), u ∈ ω}. The closed cap ω̂ has all three parts enabled.
struct ConeSelector {
  int ambient = 0;
  std::vector<SphericalRegion> regions;
  bool include_origin = true;
  bool include_radial = true;
  bool include_sphere = true;
};

ConeSelector full_ball_selector(int n);
ConeSelector origin_only_selector(int n);
ConeSelector origin_sphere_selector(int n);  // {o} ∪ S^{n-1}

// Pyramidal cap of angular half-width `aperture` (< pi/2) around a unit
// direction: the polyhedral stand-in for "a small cap around this normal".
SphericalRegion cap_region(const Vec& center, double aperture, bool open = false);
ConeSelector cap_selector(const Vec& center, double aperture, bool open = false);

bool selector_admits_direction(const ConeSelector& sel, const Vec& u);

// Relative volume of pos(rays) ∩ cone(ω) ∩ B^n inside lin(rays), by
// inclusion-exclusion over the selector's regions (d >= 2) or a direct union
// membership test (d == 1).
double selector_cone_volume(const ConeSelector& sel, const std::vector<Vec>& rays);

// Exact local parallel volume
//   MA(h_P + r·q; A) = vol{x : grad of the squared-distance envelope in A}
//     = [o ∈ A]·V_n(P) + [radial] Σ_F vol(F) r^{n-dim F} relvol(N(P,F)∩cone(ω)∩B),
// the sum running over the proper faces of a full-dimensional P. Exact for
// ambient dimension <= 3.
double local_parallel_ma(const geom::Polytope& p, double r, const ConeSelector& sel);

// Mixed Monge-Ampère value MA(h_{K_1},...,h_{K_k}, q[n-k]; A): polarization
// over Minkowski subset sums in the body slots, and Vandermonde extraction of
// the r^{n-k} Steiner coefficient of local_parallel_ma in the q slots (nodes
// i/(n+1), plus one held-out validation node).
double mixed_ma_bodies_q(const std::vector<geom::Polytope>& bodies,
                         const ConeSelector& sel);

}  // namespace mv::meas
