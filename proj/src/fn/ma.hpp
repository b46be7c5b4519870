#pragma once

#include <vector>

#include "core/area_measures.hpp"
#include "core/discrete_measure.hpp"
#include "fn/pl_function.hpp"

namespace mv::fn {

// Monge-Ampere measure of a finite function: one atom per 0-cell of its
// linearity complex, weighted by the volume of the subdifferential there.
// Computed from the lifted lower hull and cross-checked against independent
// 0-cell enumeration; the routes must agree atomwise.
meas::DiscreteMeasure ma_measure(const PLConvexFunction& v);

// The two routes behind ma_measure, exposed individually so their agreement
// can be audited externally at tolerances of the auditor's choosing.
meas::DiscreteMeasure ma_route_lifted(const PLConvexFunction& v);
meas::DiscreteMeasure ma_route_cells(const PLConvexFunction& v);

// Mixed Monge-Ampere measure of exactly n finite functions on R^n, by
// polarization over pointwise sums.
meas::DiscreteMeasure mixed_ma(const std::vector<PLConvexFunction>& vs);

// Mixed measure of the conjugates u_1*, ..., u_n*. Inputs must have compact
// domains so the conjugates are finite.
meas::DiscreteMeasure conj_ma(const std::vector<PLConvexFunction>& us);

// Convex body in R^{n+1} spanned by the graph of u over its compact domain
// and the flat cap at the maximum value of u.
geom::Polytope epigraph_body(const PLConvexFunction& u);

// Pushforward of a sphere measure in R^{n+1} to R^n through the gnomonic map
// nu -> (nu_1..nu_n)/|nu_{n+1}| of the open lower hemisphere, reweighting
// each atom by |<nu, e_{n+1}>|. Atoms on the equator cannot be transferred;
// they are dropped but counted and never silently ignored.
struct GnomonicResult {
  meas::DiscreteMeasure measure;
  int equator_atoms = 0;
  double equator_mass = 0.0;
};

GnomonicResult gnomonic_transfer_measure(const meas::DiscreteMeasure& s);
GnomonicResult gnomonic_transfer(const geom::Polytope& p);

}  // namespace mv::fn
