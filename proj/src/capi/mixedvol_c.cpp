#include "mixedvol.h"

#include <cmath>
#include <cstdlib>
#include <cstring>
#include <string>
#include <variant>
#include <vector>

#include "core/area_measures.hpp"
#include "core/report.hpp"
#include "core/tolerances.hpp"
#include "core/version.hpp"
#include "fn/ma.hpp"
#include "fn/pl_function.hpp"
#include "ig/integral_geometry.hpp"
#include "io/json_io.hpp"
#include "verify/selftest.hpp"
#include "verify/suites.hpp"

using namespace mv;

struct mv_handle {
  std::variant<geom::Polytope, geom::Subspace, meas::DiscreteMeasure, fn::PLConvexFunction> v;
};

namespace {

thread_local std::string g_error;
thread_local int g_status = MV_OK;

void set_error(int status, const std::string& msg) {
  g_status = status;
  g_error = msg;
}

char* dup_string(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  if (out) std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

// Runs the body, translating exceptions into the status-code contract and
// returning the failure value.
template <typename T, typename F>
T guarded(T fail, F&& body) {
  try {
    g_status = MV_OK;
    g_error.clear();
    return body();
  } catch (const parse_error& e) {
    set_error(MV_ERR_PARSE, e.what());
  } catch (const verification_error& e) {
    set_error(MV_ERR_VERIFY, e.what());
  } catch (const domain_error& e) {
    set_error(MV_ERR_DOMAIN, e.what());
  } catch (const std::exception& e) {
    set_error(MV_ERR_INTERNAL, e.what());
  }
  return fail;
}

// Same, for functions whose return value IS the status code.
template <typename F>
int guarded_status(F&& body) {
  guarded<int>(0, [&]() -> int {
    body();
    return 0;
  });
  return g_status;
}

const geom::Polytope& as_polytope(const mv_handle* h) {
  if (!h || !std::holds_alternative<geom::Polytope>(h->v))
    throw domain_error("expected a polytope handle");
  return std::get<geom::Polytope>(h->v);
}

const fn::PLConvexFunction& as_function(const mv_handle* h) {
  if (!h || !std::holds_alternative<fn::PLConvexFunction>(h->v))
    throw domain_error("expected a function handle");
  return std::get<fn::PLConvexFunction>(h->v);
}

std::vector<geom::Polytope> polytope_list(mv_handle* const* hs, int count) {
  if (!hs || count <= 0) throw domain_error("expected a nonempty list of polytopes");
  std::vector<geom::Polytope> out;
  out.reserve(static_cast<size_t>(count));
  for (int i = 0; i < count; ++i) out.push_back(as_polytope(hs[i]));
  return out;
}

std::vector<fn::PLConvexFunction> function_list(mv_handle* const* hs, int count) {
  if (!hs || count <= 0) throw domain_error("expected a nonempty list of functions");
  std::vector<fn::PLConvexFunction> out;
  out.reserve(static_cast<size_t>(count));
  for (int i = 0; i < count; ++i) out.push_back(as_function(hs[i]));
  return out;
}

mv_handle* wrap_measure(meas::DiscreteMeasure m) {
  return new mv_handle{std::move(m)};
}

verify::SuiteOptions parse_options(const char* options_json) {
  verify::SuiteOptions opt;
  if (!options_json || !*options_json) return opt;
  io::ojson j = io::parse(options_json);
  if (!j.is_object()) throw parse_error("suite options must be a JSON object");
  for (const auto& [key, val] : j.items()) {
    if (key == "seed")
      opt.seed = val.get<std::uint64_t>();
    else if (key == "samples")
      opt.samples = val.get<long long>();
    else if (key == "tol")
      opt.tol = val.get<double>();
    else if (key == "threads")
      opt.threads = val.get<int>();
    else
      throw parse_error("unknown suite option \"" + key + "\"");
  }
  if (opt.threads < 1) throw parse_error("threads must be at least 1");
  return opt;
}

}  // namespace

extern "C" {

const char* mv_version(void) { return MIXEDVOL_VERSION; }

const char* mv_last_error(void) { return g_error.c_str(); }

int mv_last_status(void) { return g_status; }

void mv_string_free(char* s) { std::free(s); }

mv_handle* mv_parse(const char* json) {
  return guarded<mv_handle*>(nullptr, [&]() -> mv_handle* {
    if (!json) throw parse_error("null JSON input");
    io::ojson j = io::parse(json);
    if (!j.is_object()) throw parse_error("expected a JSON object");
    if (j.contains("vertices")) return new mv_handle{io::polytope_from_json(j)};
    if (j.contains("frame")) return new mv_handle{io::subspace_from_json(j)};
    if (j.contains("atoms")) return new mv_handle{io::measure_from_json(j)};
    if (j.contains("pieces")) return new mv_handle{io::plfunction_from_json(j)};
    throw parse_error("object kind not recognized (no vertices/frame/atoms/pieces key)");
  });
}

int mv_kind(const mv_handle* h) {
  if (!h) return 0;
  switch (h->v.index()) {
    case 0: return MV_KIND_POLYTOPE;
    case 1: return MV_KIND_SUBSPACE;
    case 2: return MV_KIND_MEASURE;
    default: return MV_KIND_FUNCTION;
  }
}

char* mv_to_json(const mv_handle* h, int indent) {
  return guarded<char*>(nullptr, [&]() -> char* {
    if (!h) throw domain_error("null handle");
    io::ojson j;
    std::visit([&](const auto& obj) { j = io::to_json(obj); }, h->v);
    return dup_string(io::dump(j, indent));
  });
}

void mv_destroy(mv_handle* h) { delete h; }

int mv_mixed_volume(mv_handle* const* bodies, int count, double* out) {
  return guarded_status([&]() {
    if (!out) throw domain_error("null output pointer");
    *out = meas::mixed_volume(polytope_list(bodies, count));
  });
}

mv_handle* mv_surface_measure(const mv_handle* body) {
  return guarded<mv_handle*>(nullptr, [&]() {
    return wrap_measure(meas::surface_area_measure(as_polytope(body)));
  });
}

mv_handle* mv_mixed_area_measure(mv_handle* const* bodies, int count) {
  return guarded<mv_handle*>(nullptr, [&]() {
    return wrap_measure(meas::mixed_area_measure(polytope_list(bodies, count)));
  });
}

mv_handle* mv_ma(const mv_handle* fn) {
  return guarded<mv_handle*>(nullptr,
                             [&]() { return wrap_measure(fn::ma_measure(as_function(fn))); });
}

mv_handle* mv_mixed_ma(mv_handle* const* fns, int count) {
  return guarded<mv_handle*>(nullptr,
                             [&]() { return wrap_measure(fn::mixed_ma(function_list(fns, count))); });
}

mv_handle* mv_conj_ma(mv_handle* const* fns, int count) {
  return guarded<mv_handle*>(nullptr,
                             [&]() { return wrap_measure(fn::conj_ma(function_list(fns, count))); });
}

mv_handle* mv_legendre(const mv_handle* fn) {
  return guarded<mv_handle*>(nullptr,
                             [&]() { return new mv_handle{fn::legendre(as_function(fn))}; });
}

int mv_intrinsic_volume(const mv_handle* body, int j, int refinement, double* value,
                        double* error) {
  return guarded_status([&]() {
    if (!value) throw domain_error("null output pointer");
    meas::IntrinsicEstimate est = meas::intrinsic_volume(as_polytope(body), j, refinement);
    *value = est.value;
    if (error) *error = est.delta;
  });
}

char* mv_functional_intrinsic(const mv_handle* fn, int j, const char* alpha,
                              double support_radius, long long samples,
                              unsigned long long seed, int threads) {
  return guarded<char*>(nullptr, [&]() -> char* {
    std::string name = alpha ? alpha : "one";
    std::function<double(double)> density;
    if (name == "one")
      density = [](double) { return 1.0; };
    else if (name == "gauss")
      density = [](double t) { return std::exp(-0.5 * t * t); };
    else
      throw parse_error("unknown density \"" + name + "\" (expected one|gauss)");
    ig::MCEstimate est = ig::functional_intrinsic_volume(as_function(fn), j, density,
                                                         support_radius, samples, seed, threads);
    return dup_string(io::dump(io::to_json(est)));
  });
}

char* mv_suite_list(void) {
  return guarded<char*>(nullptr, [&]() -> char* {
    io::ojson arr = io::ojson::array();
    for (const auto& s : verify::suites()) {
      io::ojson row;
      row["id"] = s.id;
      row["summary"] = s.summary;
      arr.push_back(row);
    }
    return dup_string(io::dump(arr));
  });
}

char* mv_verify_suite(const char* suite, const char* options_json, int* pass) {
  return guarded<char*>(nullptr, [&]() -> char* {
    if (!suite) throw parse_error("null suite id");
    VerificationReport rep = verify::run_suite(suite, parse_options(options_json));
    if (pass) *pass = rep.pass ? 1 : 0;
    if (!rep.pass) set_error(MV_ERR_VERIFY, "suite \"" + std::string(suite) + "\" found violations");
    return dup_string(io::dump(io::to_json(rep)));
  });
}

char* mv_selftest(int* all_pass) {
  return guarded<char*>(nullptr, [&]() -> char* {
    std::vector<verify::SelftestCase> cases = verify::run_selftest();
    io::ojson out;
    out["version"] = MIXEDVOL_VERSION;
    out["eps_geom"] = tol::geom();
    io::ojson arr = io::ojson::array();
    int failures = 0;
    for (const auto& c : cases) {
      io::ojson row;
      row["id"] = c.id;
      row["pass"] = c.pass;
      if (!c.pass) {
        row["detail"] = c.detail;
        ++failures;
      }
      arr.push_back(row);
    }
    out["cases"] = arr;
    out["failures"] = failures;
    out["pass"] = failures == 0;
    if (all_pass) *all_pass = failures == 0 ? 1 : 0;
    if (failures > 0) set_error(MV_ERR_VERIFY, "selftest found failing cases");
    return dup_string(io::dump(out));
  });
}

int mv_set_tolerance(const char* name, double value) {
  return guarded_status([&]() {
    if (!name || std::string(name) != "geom")
      throw parse_error("unknown or read-only tolerance");
    if (!(value > 0.0)) throw domain_error("tolerance must be positive");
    tol::set_geom(value);
  });
}

double mv_get_tolerance(const char* name) {
  std::string key = name ? name : "";
  if (key == "geom") return tol::geom();
  if (key == "measure-merge-radius") return tol::measure_merge_radius();
  if (key == "measure-drop-weight") return tol::measure_drop_weight();
  return std::nan("");
}

}  // extern "C"
