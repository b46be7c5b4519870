#pragma once

#include <string>

#include <json.hpp>

#include "core/discrete_measure.hpp"
#include "core/polytope.hpp"
#include "core/report.hpp"
#include "core/subspace.hpp"
#include "fn/pl_function.hpp"
#include "ig/integral_geometry.hpp"

namespace mv::io {

using ojson = nlohmann::ordered_json;

// Serialization is the reproducibility surface: object keys keep insertion
// order, floating-point numbers print with 17 significant digits (enough to
// round-trip any double exactly), so identical inputs yield identical bytes.
std::string dump(const ojson& j, int indent = -1);

// Parse with our error taxonomy: malformed text raises mv::parse_error.
ojson parse(const std::string& text);

ojson to_json(const geom::Polytope& p);
ojson to_json(const geom::Subspace& e);
ojson to_json(const meas::DiscreteMeasure& m);
ojson to_json(const fn::PLConvexFunction& f);
ojson to_json(const ig::MCEstimate& e);
ojson to_json(const VerificationReport& r);

// Readers validate shape and delegate to the canonicalizing constructors;
// structural problems raise mv::parse_error, semantic ones mv::domain_error.
geom::Polytope polytope_from_json(const ojson& j);
geom::Subspace subspace_from_json(const ojson& j);
meas::DiscreteMeasure measure_from_json(const ojson& j);
fn::PLConvexFunction plfunction_from_json(const ojson& j);

}  // namespace mv::io
