#pragma once

#include "core/discrete_measure.hpp"
#include "core/polytope.hpp"

namespace mv::meas {

// Volume of the d-dimensional unit ball.
double kappa(int d);
double binomial(int n, int k);

// Surface area measure S_{n-1}(P, ·): one sphere atom per facet weighted by
// facet area; a body of dimension n-1 contributes both carrying normals;
// anything flatter is the zero measure.
DiscreteMeasure surface_area_measure(const geom::Polytope& p);

// Mixed area measure S(K_1, ..., K_{n-1}; ·) by inclusion-exclusion over
// Minkowski subset sums (polarization of S_{n-1}).
DiscreteMeasure mixed_area_measure(const std::vector<geom::Polytope>& bodies);

// Mixed volume V(K_1, ..., K_n), computed by volume polarization and
// cross-checked against the surface-integral route
//   V = (1/n) * sum_z h_{K_1}(z) S(K_2,...,K_n; {z});
// disagreement beyond 1e-8 relative raises an error.
double mixed_volume(const std::vector<geom::Polytope>& bodies);

struct IntrinsicEstimate {
  double value = 0.0;
  double delta = 0.0;  // Hausdorff error of the ball approximant used
};

// Intrinsic volume V_j via mixed volumes against an inscribed ball
// approximant: V_j = binom(n,j)/kappa_{n-j} * V(P[j], B[n-j]). Exact for
// j == n (volume) and j == 0 (Euler characteristic).
IntrinsicEstimate intrinsic_volume(const geom::Polytope& p, int j, int refinement);

struct AreaMeasureEstimate {
  DiscreteMeasure measure;
  double delta = 0.0;
};

// Area measure S_j(P, ·) = S(P[j], B[n-1-j]; ·) with the same approximant
// convention; exact when j == n-1.
AreaMeasureEstimate area_measure_j(const geom::Polytope& p, int j, int refinement);

// Minkowski subset sums indexed by bitmask (memoized polarization helper).
std::vector<geom::Polytope> subset_sums(const std::vector<geom::Polytope>& bodies);

}  // namespace mv::meas
