#pragma once

#include <optional>
#include <vector>

#include "core/polytope.hpp"
#include "core/subspace.hpp"

namespace mv::fn {

// One affine minorant <a, x> - b of a piecewise-linear convex function.
struct Piece {
  Vec a;
  double b = 0.0;
};

// max_i(<a_i, x> - b_i) plus the indicator of `domain` when present.
// Canonical form: pieces are irredundant (each is the strict maximizer on a
// region of positive relative volume inside the effective domain) and sorted
// lexicographically; indicators reduce to the single piece (o, 0).
struct PLConvexFunction {
  int ambient = 0;
  std::vector<Piece> pieces;
  std::optional<geom::Polytope> domain;

  bool finite() const { return !domain.has_value(); }
};

PLConvexFunction make_pl_function(int ambient, std::vector<Piece> pieces,
                                  std::optional<geom::Polytope> domain = std::nullopt);

PLConvexFunction indicator(const geom::Polytope& k);
PLConvexFunction support_fn(const geom::Polytope& k);

// +infinity outside the domain.
double evaluate(const PLConvexFunction& f, const Vec& x);

// Convex conjugate sup_x(<y, x> - f(x)). Finite functions conjugate to
// functions supported on conv{a_i}; compact-domain functions conjugate to
// finite ones (max over the cell-complex vertices of <., p> - f(p)).
PLConvexFunction legendre(const PLConvexFunction& f);

// Pointwise sum; domains intersect. Errors when the piece-product budget is
// exceeded or the intersection of domains is empty.
PLConvexFunction sum_pl(const PLConvexFunction& f, const PLConvexFunction& g);

// Epigraph scaling lambda * f(x / lambda); lambda == 0 yields the indicator
// of {o}; negative lambda is an error.
PLConvexFunction epi_scale(double lambda, const PLConvexFunction& f);

// Infimal convolution, computed as (f* + g*)*.
PLConvexFunction inf_convolution(const PLConvexFunction& f, const PLConvexFunction& g);

// Restriction to a linear subspace, expressed in the subspace's coordinates.
// Errors when the subspace misses the domain.
PLConvexFunction restrict_fn(const PLConvexFunction& f, const geom::Subspace& e);

// Orthogonal projection inf_{x: proj x = y} f(x), via (restrict(f*, E))*.
PLConvexFunction project_fn(const PLConvexFunction& f, const geom::Subspace& e);

// Subdifferential at an interior point: convex hull of the active gradients.
// Errors outside the domain interior and for lower-dimensional domains
// (where the subdifferential is unbounded).
geom::Polytope subdifferential(const PLConvexFunction& f, const Vec& x);

}  // namespace mv::fn
