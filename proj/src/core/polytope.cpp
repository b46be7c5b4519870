#include "core/polytope.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <set>

namespace mv::geom {

namespace {

std::vector<Vec> dedupe_sorted(std::vector<Vec> pts, double eps) {
  std::sort(pts.begin(), pts.end(), lex_less);
  std::vector<Vec> kept;
  for (const auto& p : pts) {
    bool dup = false;
    for (int k = static_cast<int>(kept.size()) - 1; k >= 0; --k) {
      if (p[0] - kept[k][0] > eps) break;  // sweep window on first coordinate
      if ((p - kept[k]).lpNorm<Eigen::Infinity>() <= eps) {
        dup = true;
        break;
      }
    }
    if (!dup) kept.push_back(p);
  }
  return kept;
}

double volume_in_coords(const std::vector<Vec>& pts);

// Fan triangulation in local full-dimensional coordinates.
void triangulate_in_coords(const std::vector<Vec>& pts,
                           std::vector<std::vector<Vec>>& out) {
  const int d = static_cast<int>(pts.at(0).size());
  if (d == 1) {
    double lo = pts[0][0], hi = pts[0][0];
    for (const auto& p : pts) {
      lo = std::min(lo, p[0]);
      hi = std::max(hi, p[0]);
    }
    Vec a(1), b(1);
    a[0] = lo;
    b[0] = hi;
    out.push_back({a, b});
    return;
  }
  HullResult h = quickhull(pts);
  Vec ref = Vec::Zero(d);
  for (int id : h.vertex_ids) ref += pts[id];
  ref /= static_cast<double>(h.vertex_ids.size());
  for (const auto& f : h.facets) {
    // Express the facet in its own plane, taken from the hull (a merged facet
    // can be slightly thick; re-estimating its span from the points risks
    // seeing full dimension and recursing forever). The plane basis comes
    // from a Householder complement of the facet normal.
    Eigen::HouseholderQR<Mat> qr(Mat(f.normal));
    Mat basis = (qr.householderQ() * Mat::Identity(d, d)).rightCols(d - 1);
    Vec base = f.offset * f.normal;
    std::vector<Vec> local;
    for (int id : f.vertex_ids) local.push_back(basis.transpose() * (pts[id] - base));
    std::vector<std::vector<Vec>> sub;
    triangulate_in_coords(local, sub);
    for (const auto& s : sub) {
      std::vector<Vec> simplex;
      for (const auto& y : s) simplex.push_back(base + basis * y);
      simplex.push_back(ref);
      out.push_back(std::move(simplex));
    }
  }
}

// Quickhull reports every point it used as an apex; a point landing exactly
// on the boundary of the final hull can survive as a non-extreme "vertex".
// A true vertex is pinned by incident facet planes spanning full rank.
std::vector<int> extreme_ids(const std::vector<Vec>& pts, const HullResult& h) {
  const int d = static_cast<int>(pts.at(0).size());
  std::map<int, std::vector<const Vec*>> normals;
  for (const auto& f : h.facets)
    for (int id : f.vertex_ids) normals[id].push_back(&f.normal);
  std::vector<int> kept;
  for (int id : h.vertex_ids) {
    const auto& ns = normals[id];
    if (static_cast<int>(ns.size()) < d) continue;
    Mat m(d, static_cast<int>(ns.size()));
    for (int i = 0; i < m.cols(); ++i) m.col(i) = *ns[i];
    Eigen::ColPivHouseholderQR<Mat> qr(m);
    qr.setThreshold(1e-8);  // below the facet-merge angle floor of 1e-7
    if (qr.rank() == d) kept.push_back(id);
  }
  // Paranoia: a full-dimensional hull has at least d+1 true vertices.
  if (static_cast<int>(kept.size()) < d + 1) return h.vertex_ids;
  return kept;
}

double volume_in_coords(const std::vector<Vec>& pts) {
  const int d = static_cast<int>(pts.at(0).size());
  if (d == 0) return 1.0;
  std::vector<std::vector<Vec>> simplices;
  triangulate_in_coords(pts, simplices);
  double fact = 1.0;
  for (int i = 2; i <= d; ++i) fact *= i;
  double total = 0.0;
  for (const auto& s : simplices) {
    Mat m(d, d);
    for (int i = 0; i < d; ++i) m.col(i) = s[i + 1] - s[0];
    total += std::abs(m.determinant()) / fact;
  }
  return total;
}

}  // namespace

Polytope make_polytope(int ambient, std::vector<Vec> pts) {
  if (ambient < 1 || ambient > 5)
    throw domain_error("polytope ambient dimension must be in [1,5]");
  if (pts.empty()) throw domain_error("polytope needs at least one point");
  for (const auto& p : pts)
    if (static_cast<int>(p.size()) != ambient)
      throw domain_error("point dimension mismatch");
  const double eps = tol::geom_for_scale(max_abs_coord(pts));
  std::vector<Vec> uniq = dedupe_sorted(std::move(pts), eps);

  Polytope out;
  out.ambient = ambient;
  AffineHull ah = affine_hull(uniq);
  const int d = ah.dim();
  if (d == 0) {
    out.vertices = {uniq.front()};
    return out;
  }
  if (d == 1) {
    int imin = 0, imax = 0;
    double tmin = 0.0, tmax = 0.0;
    for (int i = 0; i < static_cast<int>(uniq.size()); ++i) {
      double t = ah.to_local(uniq[i])[0];
      if (t < tmin) tmin = t, imin = i;
      if (t > tmax) tmax = t, imax = i;
    }
    out.vertices = {uniq[imin], uniq[imax]};
  } else if (d == ambient) {
    HullResult h = quickhull(uniq);
    for (int id : extreme_ids(uniq, h)) out.vertices.push_back(uniq[id]);
  } else {
    std::vector<Vec> local;
    for (const auto& p : uniq) local.push_back(ah.to_local(p));
    HullResult h = quickhull(local);
    for (int id : extreme_ids(local, h)) out.vertices.push_back(uniq[id]);
  }
  std::sort(out.vertices.begin(), out.vertices.end(), lex_less);
  return out;
}

AffineHull polytope_affine_hull(const Polytope& p) { return affine_hull(p.vertices); }

int intrinsic_dim(const Polytope& p) { return polytope_affine_hull(p).dim(); }

double relative_volume(const std::vector<Vec>& pts) {
  AffineHull ah = affine_hull(pts);
  if (ah.dim() == 0) return 1.0;
  std::vector<Vec> local;
  for (const auto& p : pts) local.push_back(ah.to_local(p));
  return volume_in_coords(local);
}

double volume(const Polytope& p) {
  AffineHull ah = polytope_affine_hull(p);
  if (ah.dim() < p.ambient) return 0.0;
  return volume_in_coords(p.vertices);
}

void triangulate(const std::vector<Vec>& pts, std::vector<std::vector<Vec>>& out) {
  triangulate_in_coords(pts, out);
}

Polytope minkowski_sum(const Polytope& p, const Polytope& q) {
  if (p.ambient != q.ambient) throw domain_error("minkowski_sum: dimension mismatch");
  std::vector<Vec> sums;
  sums.reserve(p.vertices.size() * q.vertices.size());
  for (const auto& a : p.vertices)
    for (const auto& b : q.vertices) sums.push_back(a + b);
  return make_polytope(p.ambient, std::move(sums));
}

Polytope scale(const Polytope& p, double lambda) {
  std::vector<Vec> pts;
  for (const auto& v : p.vertices) pts.push_back(lambda * v);
  return make_polytope(p.ambient, std::move(pts));
}

Polytope translate(const Polytope& p, const Vec& t) {
  std::vector<Vec> pts;
  for (const auto& v : p.vertices) pts.push_back(v + t);
  Polytope out;  // translation preserves canonical order; no re-hull needed
  out.ambient = p.ambient;
  out.vertices = std::move(pts);
  std::sort(out.vertices.begin(), out.vertices.end(), lex_less);
  return out;
}

double support_function(const Polytope& p, const Vec& direction) {
  double best = -std::numeric_limits<double>::infinity();
  for (const auto& v : p.vertices) best = std::max(best, direction.dot(v));
  return best;
}

std::vector<int> support_set(const Polytope& p, const Vec& direction) {
  double best = support_function(p, direction);
  double scale = std::abs(best);
  for (const auto& v : p.vertices) scale = std::max(scale, std::abs(direction.dot(v)));
  const double eps = tol::geom_for_scale(scale);
  std::vector<int> ids;
  for (int i = 0; i < static_cast<int>(p.vertices.size()); ++i)
    if (direction.dot(p.vertices[i]) >= best - eps) ids.push_back(i);
  return ids;
}

Polytope project(const Polytope& p, const Subspace& e) {
  if (e.ambient != p.ambient) throw domain_error("project: ambient mismatch");
  std::vector<Vec> pts;
  for (const auto& v : p.vertices) pts.push_back(e.push(v));
  return make_polytope(e.dim(), std::move(pts));
}

bool contains(const Polytope& p, const Vec& x) {
  const double eps = tol::geom_for_scale(
      std::max(max_abs_coord(p.vertices), x.lpNorm<Eigen::Infinity>()));
  AffineHull ah = polytope_affine_hull(p);
  Vec r = (x - ah.base);
  if (ah.dim() > 0) r -= ah.basis * (ah.basis.transpose() * (x - ah.base));
  if (r.lpNorm<Eigen::Infinity>() > eps) return false;
  const int d = ah.dim();
  if (d == 0) return true;
  std::vector<Vec> local;
  for (const auto& v : p.vertices) local.push_back(ah.to_local(v));
  Vec y = ah.to_local(x);
  if (d == 1) {
    double lo = local[0][0], hi = local[0][0];
    for (const auto& q : local) {
      lo = std::min(lo, q[0]);
      hi = std::max(hi, q[0]);
    }
    return y[0] >= lo - eps && y[0] <= hi + eps;
  }
  HullResult h = quickhull(local);
  for (const auto& f : h.facets)
    if (f.normal.dot(y) - f.offset > eps) return false;
  return true;
}

namespace {

int register_face(FaceLattice& lat, std::map<std::vector<int>, int>& id_of,
                  const Polytope& p, const std::vector<int>& ids, bool& existed) {
  auto it = id_of.find(ids);
  if (it != id_of.end()) {
    existed = true;
    return it->second;
  }
  existed = false;
  Face f;
  f.verts = ids;
  std::vector<Vec> sub;
  for (int id : ids) sub.push_back(p.vertices[id]);
  AffineHull ah = affine_hull(sub);
  f.dim = ah.dim();
  f.rel_volume = relative_volume(sub);
  f.centroid = Vec::Zero(p.ambient);
  for (const auto& v : sub) f.centroid += v;
  f.centroid /= static_cast<double>(sub.size());
  lat.faces.push_back(std::move(f));
  int idx = static_cast<int>(lat.faces.size()) - 1;
  id_of.emplace(ids, idx);
  return idx;
}

int enumerate_faces(FaceLattice& lat, std::map<std::vector<int>, int>& id_of,
                    const Polytope& p, std::vector<int> ids) {
  std::sort(ids.begin(), ids.end());
  bool existed = false;
  int idx = register_face(lat, id_of, p, ids, existed);
  if (existed) return idx;
  const int df = lat.faces[idx].dim;
  if (df == 0) return idx;
  if (df == 1) {
    for (int id : ids) {
      bool e2;
      register_face(lat, id_of, p, {id}, e2);
    }
    return idx;
  }
  std::vector<Vec> sub;
  for (int id : ids) sub.push_back(p.vertices[id]);
  AffineHull ah = affine_hull(sub);
  std::vector<Vec> local;
  for (const auto& v : sub) local.push_back(ah.to_local(v));
  HullResult h = quickhull(local);
  for (const auto& fac : h.facets) {
    std::vector<int> child;
    for (int lid : fac.vertex_ids) child.push_back(ids[lid]);
    enumerate_faces(lat, id_of, p, std::move(child));
  }
  return idx;
}

}  // namespace

FaceLattice face_lattice(const Polytope& p) {
  FaceLattice lat;
  lat.hull = polytope_affine_hull(p);
  const int d = lat.hull.dim();
  const int n = p.ambient;
  lat.intrinsic_dim = d;
  std::map<std::vector<int>, int> id_of;
  std::vector<int> all_ids(p.vertices.size());
  for (int i = 0; i < static_cast<int>(all_ids.size()); ++i) all_ids[i] = i;

  if (d == 0) {
    bool e;
    register_face(lat, id_of, p, {0}, e);
  } else if (d == 1) {
    enumerate_faces(lat, id_of, p, all_ids);
    if (n == 1) {
      // Endpoints are the facets of a segment on the line; outward normals.
      for (int i = 0; i < static_cast<int>(lat.faces.size()); ++i) {
        if (lat.faces[i].dim != 0) continue;
        double x = p.vertices[lat.faces[i].verts[0]][0];
        Vec u(1);
        u[0] = x <= p.vertices.front()[0] ? -1.0 : 1.0;
        lat.facet_face_ids.push_back(i);
        lat.facet_normals.push_back(u);
        lat.facet_offsets.push_back(u[0] * x);
      }
    }
  } else {
    bool e;
    register_face(lat, id_of, p, all_ids, e);
    HullResult h;
    std::vector<Vec> local;
    if (d == n) {
      h = quickhull(p.vertices);
    } else {
      for (const auto& v : p.vertices) local.push_back(lat.hull.to_local(v));
      h = quickhull(local);
    }
    for (const auto& fac : h.facets) {
      int fid = enumerate_faces(lat, id_of, p, fac.vertex_ids);
      if (d == n) {
        lat.facet_face_ids.push_back(fid);
        lat.facet_normals.push_back(fac.normal);
        lat.facet_offsets.push_back(fac.offset);
      }
    }
  }
  if (d == n - 1) {
    Mat comp = orth_complement(lat.hull.basis, n);
    Vec u = comp.col(0);
    lat.carrying_normals = {u, Vec(-u)};
  }
  // The body is registered before its proper faces; move it to the back so
  // consumers can rely on the documented order.
  int body_pos = -1;
  for (int i = 0; i < static_cast<int>(lat.faces.size()); ++i)
    if (lat.faces[i].dim == d) {
      body_pos = i;
      break;
    }
  if (body_pos >= 0 && body_pos + 1 != static_cast<int>(lat.faces.size())) {
    Face body = std::move(lat.faces[static_cast<size_t>(body_pos)]);
    lat.faces.erase(lat.faces.begin() + body_pos);
    lat.faces.push_back(std::move(body));
    for (int& fid : lat.facet_face_ids)
      if (fid > body_pos) --fid;
  }
  lat.containing_facets.resize(lat.faces.size());
  for (int i = 0; i < static_cast<int>(lat.faces.size()); ++i) {
    for (int jf = 0; jf < static_cast<int>(lat.facet_face_ids.size()); ++jf) {
      const auto& fv = lat.faces[lat.facet_face_ids[jf]].verts;
      if (std::includes(fv.begin(), fv.end(), lat.faces[i].verts.begin(),
                        lat.faces[i].verts.end()))
        lat.containing_facets[i].push_back(jf);
    }
  }
  return lat;
}

namespace {

void subdivide_sphere_triangles(std::vector<Vec>& verts,
                                std::vector<std::array<int, 3>>& tris) {
  std::map<std::pair<int, int>, int> mid;
  auto midpoint = [&](int a, int b) {
    auto key = std::minmax(a, b);
    auto it = mid.find(key);
    if (it != mid.end()) return it->second;
    Vec m = (verts[a] + verts[b]) * 0.5;
    m.normalize();
    verts.push_back(m);
    int id = static_cast<int>(verts.size()) - 1;
    mid.emplace(key, id);
    return id;
  };
  std::vector<std::array<int, 3>> next;
  for (const auto& t : tris) {
    int ab = midpoint(t[0], t[1]);
    int bc = midpoint(t[1], t[2]);
    int ca = midpoint(t[2], t[0]);
    next.push_back({t[0], ab, ca});
    next.push_back({t[1], bc, ab});
    next.push_back({t[2], ca, bc});
    next.push_back({ab, bc, ca});
  }
  tris = std::move(next);
}

}  // namespace

BallApprox ball_approx(int dim, int refinement) {
  if (dim < 1) throw domain_error("ball_approx: dimension must be >= 1");
  if (refinement < 1) throw domain_error("ball_approx: refinement must be >= 1");
  if (dim == 1) {
    Vec a(1), b(1);
    a[0] = -1.0;
    b[0] = 1.0;
    return {make_polytope(1, {a, b}), 0.0};
  }
  if (dim == 2) {
    const int sides = 4 * refinement;
    std::vector<Vec> pts;
    for (int k = 0; k < sides; ++k) {
      double th = 2.0 * M_PI * k / sides;
      Vec v(2);
      v << std::cos(th), std::sin(th);
      pts.push_back(v);
    }
    return {make_polytope(2, std::move(pts)), 1.0 - std::cos(M_PI / sides)};
  }
  std::vector<Vec> verts;
  for (int i = 0; i < dim; ++i) {
    Vec v = Vec::Zero(dim);
    v[i] = 1.0;
    verts.push_back(v);
    verts.push_back(Vec(-v));
  }
  if (dim == 3) {
    // Octants of the octahedron; subdivision keeps vertices on the sphere.
    std::vector<std::array<int, 3>> tris;
    for (int sx = 0; sx < 2; ++sx)
      for (int sy = 0; sy < 2; ++sy)
        for (int sz = 0; sz < 2; ++sz) tris.push_back({0 + sx, 2 + sy, 4 + sz});
    for (int r = 1; r < refinement; ++r) subdivide_sphere_triangles(verts, tris);
  } else {
    for (int r = 1; r < refinement; ++r) {
      Polytope p = make_polytope(dim, verts);
      FaceLattice lat = face_lattice(p);
      std::vector<Vec> next = p.vertices;
      for (const auto& f : lat.faces) {
        if (f.dim != 1) continue;
        Vec m = (p.vertices[f.verts[0]] + p.vertices[f.verts[1]]) * 0.5;
        m.normalize();
        next.push_back(m);
      }
      verts = std::move(next);
    }
  }
  Polytope body = make_polytope(dim, verts);
  HullResult h = quickhull(body.vertices);
  double min_offset = 1.0;
  for (const auto& f : h.facets) min_offset = std::min(min_offset, f.offset);
  return {std::move(body), 1.0 - min_offset};
}

Polytope unit_cube(int n) {
  std::vector<Vec> pts;
  for (int mask = 0; mask < (1 << n); ++mask) {
    Vec v(n);
    for (int i = 0; i < n; ++i) v[i] = (mask >> i) & 1 ? 1.0 : 0.0;
    pts.push_back(v);
  }
  return make_polytope(n, std::move(pts));
}

Polytope segment(const Vec& a, const Vec& b) {
  return make_polytope(static_cast<int>(a.size()), {a, b});
}

Polytope standard_simplex(int n) {
  std::vector<Vec> pts{Vec::Zero(n)};
  for (int i = 0; i < n; ++i) {
    Vec v = Vec::Zero(n);
    v[i] = 1.0;
    pts.push_back(v);
  }
  return make_polytope(n, std::move(pts));
}

}  // namespace mv::geom
