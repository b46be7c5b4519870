#include "io/json_io.hpp"

#include <cmath>
#include <cstdio>

#include "core/tolerances.hpp"

namespace mv::io {

namespace {

void dump_rec(const ojson& j, std::string& out, int indent, int depth) {
  auto newline = [&](int d) {
    if (indent < 0) return;
    out.push_back('\n');
    out.append(static_cast<size_t>(indent * d), ' ');
  };
  switch (j.type()) {
    case ojson::value_t::object: {
      if (j.empty()) {
        out += "{}";
        return;
      }
      out.push_back('{');
      bool first = true;
      for (auto it = j.begin(); it != j.end(); ++it) {
        if (!first) out.push_back(',');
        first = false;
        newline(depth + 1);
        out += ojson(it.key()).dump();
        out += indent < 0 ? ":" : ": ";
        dump_rec(it.value(), out, indent, depth + 1);
      }
      newline(depth);
      out.push_back('}');
      return;
    }
    case ojson::value_t::array: {
      if (j.empty()) {
        out += "[]";
        return;
      }
      out.push_back('[');
      bool first = true;
      for (const auto& el : j) {
        if (!first) out.push_back(',');
        first = false;
        newline(depth + 1);
        dump_rec(el, out, indent, depth + 1);
      }
      newline(depth);
      out.push_back(']');
      return;
    }
    case ojson::value_t::number_float: {
      double x = j.get<double>();
      if (!std::isfinite(x)) throw domain_error("non-finite number in JSON output");
      char buf[40];
      std::snprintf(buf, sizeof buf, "%.17g", x);
      out += buf;
      return;
    }
    default:
      out += j.dump();
      return;
  }
}

const ojson& field(const ojson& j, const char* key) {
  if (!j.is_object() || !j.contains(key))
    throw parse_error(std::string("missing field \"") + key + "\"");
  return j.at(key);
}

Vec vec_from(const ojson& j, const char* what) {
  if (!j.is_array() || j.empty())
    throw parse_error(std::string(what) + " must be a non-empty array of numbers");
  Vec v(j.size());
  for (size_t i = 0; i < j.size(); ++i) {
    if (!j[i].is_number()) throw parse_error(std::string(what) + " must contain numbers");
    v[static_cast<Eigen::Index>(i)] = j[i].get<double>();
  }
  return v;
}

ojson vec_to(const Vec& v) {
  ojson a = ojson::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) a.push_back(v[i]);
  return a;
}

int dim_from(const ojson& j) {
  const ojson& d = field(j, "dim");
  if (!d.is_number_integer() || d.get<int>() < 1)
    throw parse_error("\"dim\" must be a positive integer");
  return d.get<int>();
}

}  // namespace

std::string dump(const ojson& j, int indent) {
  std::string out;
  dump_rec(j, out, indent, 0);
  return out;
}

ojson parse(const std::string& text) {
  ojson j = ojson::parse(text, nullptr, false);
  if (j.is_discarded()) throw parse_error("malformed JSON input");
  return j;
}

ojson to_json(const geom::Polytope& p) {
  ojson j;
  j["dim"] = p.ambient;
  ojson verts = ojson::array();
  for (const auto& v : p.vertices) verts.push_back(vec_to(v));
  j["vertices"] = std::move(verts);
  return j;
}

geom::Polytope polytope_from_json(const ojson& j) {
  int dim = dim_from(j);
  const ojson& verts = field(j, "vertices");
  if (!verts.is_array() || verts.empty())
    throw parse_error("\"vertices\" must be a non-empty array");
  std::vector<Vec> pts;
  pts.reserve(verts.size());
  for (const auto& row : verts) {
    Vec v = vec_from(row, "vertex");
    if (v.size() != dim) throw parse_error("vertex length disagrees with \"dim\"");
    pts.push_back(std::move(v));
  }
  return geom::make_polytope(dim, std::move(pts));
}

ojson to_json(const geom::Subspace& e) {
  ojson j;
  j["dim"] = e.ambient;
  ojson frame = ojson::array();
  for (Eigen::Index c = 0; c < e.frame.cols(); ++c) frame.push_back(vec_to(e.frame.col(c)));
  j["frame"] = std::move(frame);
  return j;
}

geom::Subspace subspace_from_json(const ojson& j) {
  int dim = dim_from(j);
  const ojson& frame = field(j, "frame");
  if (!frame.is_array() || frame.empty())
    throw parse_error("\"frame\" must be a non-empty array of basis vectors");
  Mat f(dim, static_cast<Eigen::Index>(frame.size()));
  for (size_t c = 0; c < frame.size(); ++c) {
    Vec v = vec_from(frame[c], "frame vector");
    if (v.size() != dim) throw parse_error("frame vector length disagrees with \"dim\"");
    f.col(static_cast<Eigen::Index>(c)) = v;
  }
  return geom::make_subspace(dim, std::move(f));
}

ojson to_json(const meas::DiscreteMeasure& m) {
  ojson j;
  j["kind"] = m.kind == meas::MeasureKind::sphere ? "sphere" : "point";
  j["dim"] = m.ambient;
  ojson atoms = ojson::array();
  for (const auto& a : m.atoms) {
    ojson atom;
    atom["loc"] = vec_to(a.loc);
    atom["w"] = a.weight;
    atoms.push_back(std::move(atom));
  }
  j["atoms"] = std::move(atoms);
  return j;
}

meas::DiscreteMeasure measure_from_json(const ojson& j) {
  const ojson& kind = field(j, "kind");
  if (!kind.is_string() || (kind != "sphere" && kind != "point"))
    throw parse_error("\"kind\" must be \"sphere\" or \"point\"");
  const ojson& atoms = field(j, "atoms");
  if (!atoms.is_array()) throw parse_error("\"atoms\" must be an array");
  int dim = j.contains("dim") ? dim_from(j) : 0;
  std::vector<meas::Atom> out;
  out.reserve(atoms.size());
  for (const auto& a : atoms) {
    Vec loc = vec_from(field(a, "loc"), "atom location");
    const ojson& w = field(a, "w");
    if (!w.is_number()) throw parse_error("atom weight \"w\" must be a number");
    if (dim == 0) dim = static_cast<int>(loc.size());
    if (loc.size() != dim) throw parse_error("atom locations have inconsistent dimension");
    out.push_back({std::move(loc), w.get<double>()});
  }
  if (dim == 0) throw parse_error("measure needs a \"dim\" field when it has no atoms");
  auto k = kind == "sphere" ? meas::MeasureKind::sphere : meas::MeasureKind::point;
  return meas::make_measure(k, dim, std::move(out), false);
}

ojson to_json(const fn::PLConvexFunction& f) {
  ojson j;
  j["dim"] = f.ambient;
  ojson pieces = ojson::array();
  for (const auto& p : f.pieces) {
    ojson piece;
    piece["a"] = vec_to(p.a);
    piece["b"] = p.b;
    pieces.push_back(std::move(piece));
  }
  j["pieces"] = std::move(pieces);
  j["domain"] = f.domain ? to_json(*f.domain) : ojson(nullptr);
  return j;
}

fn::PLConvexFunction plfunction_from_json(const ojson& j) {
  int dim = dim_from(j);
  const ojson& pieces = field(j, "pieces");
  if (!pieces.is_array() || pieces.empty())
    throw parse_error("\"pieces\" must be a non-empty array");
  std::vector<fn::Piece> ps;
  ps.reserve(pieces.size());
  for (const auto& p : pieces) {
    Vec a = vec_from(field(p, "a"), "piece slope \"a\"");
    if (a.size() != dim) throw parse_error("piece slope length disagrees with \"dim\"");
    const ojson& b = field(p, "b");
    if (!b.is_number()) throw parse_error("piece offset \"b\" must be a number");
    ps.push_back({std::move(a), b.get<double>()});
  }
  std::optional<geom::Polytope> domain;
  if (j.contains("domain") && !j.at("domain").is_null()) {
    domain = polytope_from_json(j.at("domain"));
    if (domain->ambient != dim) throw parse_error("domain dimension disagrees with \"dim\"");
  }
  return fn::make_pl_function(dim, std::move(ps), std::move(domain));
}

ojson to_json(const ig::MCEstimate& e) {
  ojson j;
  j["mean"] = e.mean;
  j["stderr"] = e.stderr_;
  j["N"] = e.n;
  j["seed"] = e.seed;
  return j;
}

ojson to_json(const VerificationReport& r) {
  ojson j;
  j["theorem"] = r.theorem;
  j["inputs"] = r.inputs;
  j["witnesses_checked"] = r.witnesses_checked;
  ojson v = ojson::array();
  for (const auto& s : r.violations) v.push_back(s);
  j["violations"] = std::move(v);
  j["pass"] = r.pass;
  return j;
}

}  // namespace mv::io
