#pragma once

#include <vector>

#include "core/linalg.hpp"

namespace mv::geom {

// Relative volume of pos(rays) ∩ {x : <h,x> >= 0 for all h} ∩ B^n, measured
// inside lin(rays). The span of the rays may have dimension d = 1, 2 or 3
// (exact angle formulas: ray test, circular-arc length, spherical excess);
// higher-dimensional spans raise an error. `strict` switches the halfspace
// constraints to open ones, which only changes the d == 1 answer (boundaries
// carry no measure otherwise).
double cone_section_volume(const std::vector<Vec>& rays,
                           const std::vector<Vec>& halfspaces, bool strict);

}  // namespace mv::geom
