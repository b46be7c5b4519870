#pragma once

#include <vector>

#include "core/subspace.hpp"
#include "fn/pl_function.hpp"

namespace mv::fn {

// Orthonormal basis of the span of active-gradient differences of a finite
// function at x (the directions in which the graph creases there).
Mat crease_span(const PLConvexFunction& v, const Vec& x);

// Membership of x in the support of the mixed Monge-Ampere measure with j
// copies of v and n-j isotropic slots, decided directly from the crease span:
// at the origin the crease must have dimension >= j; elsewhere additionally
// the crease may not be orthogonal to x.
bool ma_support_member(const PLConvexFunction& v, const Vec& x, int j);

// The same decision made constructively: build a j-dimensional witness
// subspace E containing x, restrict v to it, and test whether the restricted
// crease at x has full rank j.
bool ma_support_member_witness(const PLConvexFunction& v, const Vec& x, int j);

// One representative point per cell of the linearity complex of a finite
// function, every dimension included; 0-cells appear at their exact location.
std::vector<Vec> complex_points(const PLConvexFunction& v);

}  // namespace mv::fn
