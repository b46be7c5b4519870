#include "core/support_analysis.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "core/tolerances.hpp"

namespace mv::geom {
namespace {

constexpr double kTol = 1e-9;

Vec cone_representative(const std::vector<Vec>& rays) {
  Vec s = Vec::Zero(rays[0].size());
  for (const Vec& r : rays) s += unit(r);
  return unit(s);
}

bool is_pole(const Vec& z) {
  int n = static_cast<int>(z.size());
  return z.head(n - 1).norm() <= kTol;
}

}  // namespace

NormalFan normal_fan(const Polytope& p) {
  NormalFan fan;
  fan.ambient = p.ambient;
  fan.lattice = face_lattice(p);
  if (fan.lattice.intrinsic_dim != p.ambient)
    throw domain_error(
        "normal fans require a full-dimensional body; embed lower-dimensional bodies first");
  for (size_t fi = 0; fi + 1 < fan.lattice.faces.size(); ++fi) {
    const Face& f = fan.lattice.faces[fi];
    FanCone c;
    c.face_id = static_cast<int>(fi);
    c.face_dim = f.dim;
    for (int k : fan.lattice.containing_facets[fi])
      c.rays.push_back(fan.lattice.facet_normals[k]);
    c.dim = p.ambient - f.dim;
    c.representative = cone_representative(c.rays);
    fan.cones.push_back(std::move(c));
  }
  return fan;
}

TouchingCone touching_cone(const Polytope& p, const Vec& z) {
  int n = p.ambient;
  if (static_cast<int>(z.size()) != n) throw domain_error("direction dimension mismatch");
  if (std::abs(z.norm() - 1.0) > 1e-7) throw domain_error("directions must be unit vectors");
  FaceLattice lat = face_lattice(p);
  if (lat.intrinsic_dim != n)
    throw domain_error(
        "touching cones require a full-dimensional body; embed lower-dimensional bodies first");
  std::vector<int> ss = support_set(p, z);
  std::sort(ss.begin(), ss.end());
  // The support set is itself a face; pick the smallest face containing it.
  int best = -1;
  for (size_t fi = 0; fi < lat.faces.size(); ++fi) {
    const Face& f = lat.faces[fi];
    if (std::includes(f.verts.begin(), f.verts.end(), ss.begin(), ss.end()) &&
        (best < 0 || f.dim < lat.faces[best].dim))
      best = static_cast<int>(fi);
  }
  const Face& f = lat.faces[best];
  TouchingCone t;
  t.face_id = best;
  t.face_dim = f.dim;
  for (int k : lat.containing_facets[best]) t.rays.push_back(lat.facet_normals[k]);
  t.dim = n - f.dim;
  if (f.verts.size() > 1) {
    std::vector<Vec> diffs;
    for (size_t i = 1; i < f.verts.size(); ++i)
      diffs.push_back(p.vertices[f.verts[i]] - p.vertices[f.verts[0]]);
    t.touching_space = span_basis(diffs, n);
  } else {
    t.touching_space = Mat::Zero(n, 0);
  }
  return t;
}

bool is_r_extreme(const Polytope& p, const Vec& z, int r) {
  if (r < 0 || r > p.ambient - 1) throw domain_error("extremality order out of range");
  return touching_cone(p, z).dim <= r + 1;
}

bool is_mixed_extreme_ball(const Polytope& p, const Vec& z, int j) {
  int n = p.ambient;
  if (j < 1 || j > n - 1) throw domain_error("mixed-extremality index out of range");
  TouchingCone t = touching_cone(p, z);
  int ts_dim = t.face_dim;
  if (j == n - 1) return ts_dim >= n - 1;
  if (is_pole(z)) return ts_dim >= j;
  if (ts_dim < j) return false;
  for (int c = 0; c < t.touching_space.cols(); ++c)
    if (std::abs(t.touching_space(n - 1, c)) > kTol) return true;
  return false;
}

bool support_membership_via_projections(const Polytope& p, const Vec& z, int j) {
  int n = p.ambient;
  if (j < 1 || j > n - 1) throw domain_error("mixed-extremality index out of range");
  TouchingCone t = touching_cone(p, z);
  const Mat& ts = t.touching_space;
  Mat e;
  if (is_pole(z)) {
    // TS is automatically horizontal here; any j columns of it work.
    if (ts.cols() < j) return false;
    e.resize(n, j + 1);
    e.leftCols(j) = ts.leftCols(j);
    e.col(j) = Vec::Unit(n, n - 1);
  } else {
    // U must come from TS ∩ e_n-perp; E = lin{z, e_n} ⊕ U.
    Mat tsl;
    if (ts.cols() == 0) {
      tsl = Mat::Zero(n, 0);
    } else {
      Vec w = ts.row(n - 1).transpose();
      if (w.norm() <= kTol) {
        tsl = ts;
      } else {
        Mat wcol(ts.cols(), 1);
        wcol.col(0) = w / w.norm();
        tsl = ts * orth_complement(wcol, static_cast<int>(ts.cols()));
      }
    }
    if (tsl.cols() < j - 1) return false;
    Vec zh = z;
    zh(n - 1) = 0.0;
    e.resize(n, j + 1);
    e.leftCols(j - 1) = tsl.leftCols(j - 1);
    e.col(j - 1) = unit(zh);
    e.col(j) = Vec::Unit(n, n - 1);
  }
  Eigen::HouseholderQR<Mat> qr(e);
  Mat frame = qr.householderQ() * Mat::Identity(n, static_cast<int>(e.cols()));
  Subspace sub = make_subspace(n, frame);
  Polytope q = project(p, sub);
  Vec zhat = unit(sub.push(z));
  std::vector<int> ss = support_set(q, zhat);
  int fdim = 0;
  if (ss.size() > 1) {
    std::vector<Vec> diffs;
    for (size_t i = 1; i < ss.size(); ++i)
      diffs.push_back(q.vertices[ss[i]] - q.vertices[ss[0]]);
    fdim = span_rank(diffs);
  }
  return fdim == j;
}

VerificationReport nesting_check(const Polytope& p, int j, int k) {
  int n = p.ambient;
  if (j < 1 || j > k || k > n - 1)
    throw domain_error("nesting indices must satisfy 1 <= j <= k <= n-1");
  NormalFan fan = normal_fan(p);
  VerificationReport rep;
  rep.theorem = "mixed-extreme-nesting";
  rep.inputs = "polytope with " + std::to_string(p.vertices.size()) +
               " vertices in dimension " + std::to_string(n) + ", j=" +
               std::to_string(j) + ", k=" + std::to_string(k);
  std::vector<Vec> witnesses;
  for (const FanCone& c : fan.cones) witnesses.push_back(c.representative);
  witnesses.push_back(Vec::Unit(n, n - 1));
  witnesses.push_back(-Vec::Unit(n, n - 1));
  for (const Vec& z : witnesses) {
    rep.note_witness();
    if (is_mixed_extreme_ball(p, z, k) && !is_mixed_extreme_ball(p, z, j)) {
      std::string desc = "membership at k=" + std::to_string(k) +
                         " without membership at j=" + std::to_string(j) +
                         " for direction [";
      for (int i = 0; i < n; ++i) desc += (i ? "," : "") + std::to_string(z(i));
      rep.violate(desc + "]");
    }
  }
  return rep;
}

}  // namespace mv::geom
