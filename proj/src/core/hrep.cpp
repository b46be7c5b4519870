#include "core/hrep.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <limits>

#include "core/simplex_lp.hpp"
#include "core/tolerances.hpp"

namespace mv::geom {

namespace {

constexpr double kTol = 1e-9;

// Drop near-zero rows (detecting trivial infeasibility) and duplicates.
bool clean_rows(const Mat& a, const Vec& c, Mat& a_out, Vec& c_out) {
  std::vector<int> keep;
  for (int i = 0; i < a.rows(); ++i) {
    if (a.row(i).norm() <= kTol) {
      if (c[i] < -kTol) return false;
      continue;
    }
    keep.push_back(i);
  }
  a_out.resize(static_cast<int>(keep.size()), a.cols());
  c_out.resize(static_cast<int>(keep.size()));
  for (size_t k = 0; k < keep.size(); ++k) {
    a_out.row(static_cast<int>(k)) = a.row(keep[k]);
    c_out[static_cast<int>(k)] = c[keep[k]];
  }
  return true;
}

void push_unique(std::vector<Vec>& vs, const Vec& v, double eps) {
  for (const auto& w : vs)
    if (approx_eq(w, v, eps)) return;
  vs.push_back(v);
}

// Vertices of a bounded full-dimensional {y : A y <= c} via the polar dual of
// a translate that puts an interior point at the origin.
std::vector<Vec> full_dim_vertices(const Mat& a, const Vec& c, const Vec& inside) {
  const int d = static_cast<int>(a.cols());
  Vec slack = c - a * inside;
  if (d == 1) {
    double lo = -std::numeric_limits<double>::infinity();
    double hi = std::numeric_limits<double>::infinity();
    for (int i = 0; i < a.rows(); ++i) {
      double coef = a(i, 0);
      double bound = c[i] / coef;
      if (coef > 0) hi = std::min(hi, bound);
      else lo = std::max(lo, bound);
    }
    if (!std::isfinite(lo) || !std::isfinite(hi))
      throw domain_error("vertex enumeration requires a bounded region");
    std::vector<Vec> out;
    Vec v(1);
    v[0] = lo;
    out.push_back(v);
    if (hi - lo > kTol) {
      v[0] = hi;
      out.push_back(v);
    }
    return out;
  }

  std::vector<Vec> dual;
  for (int i = 0; i < a.rows(); ++i) {
    if (slack[i] <= kTol)
      throw domain_error("vertex enumeration needs an interior point");
    push_unique(dual, Vec(a.row(i).transpose() / slack[i]), kTol);
  }
  dual.emplace_back(Vec::Zero(d));  // keeps the origin inside the dual hull
  if (affine_hull(dual).dim() < d)
    throw domain_error("vertex enumeration requires a bounded region");
  HullResult h = quickhull(dual);
  std::vector<Vec> out;
  const double scale = std::max(1.0, max_abs_coord(dual));
  for (const auto& f : h.facets) {
    if (f.offset <= 1e-9 * scale)
      throw domain_error("vertex enumeration requires a bounded region");
    push_unique(out, Vec(inside + f.normal / f.offset), kTol);
  }
  return out;
}

}  // namespace

HRepVertices hrep_vertices(const Mat& a_in, const Vec& c_in) {
  HRepVertices out;
  const int d = static_cast<int>(a_in.cols());
  Mat a;
  Vec c;
  if (!clean_rows(a_in, c_in, a, c)) return out;
  if (a.rows() == 0) {
    if (d == 0) {
      out.feasible = true;
      out.vertices.emplace_back(Vec::Zero(0));
      out.hull.base = Vec::Zero(0);
      out.hull.basis = Mat::Zero(0, 0);
      return out;
    }
    throw domain_error("vertex enumeration requires a bounded region");
  }

  lp::ChebyshevResult ball = lp::chebyshev_center(a, c, 1.0);
  if (!ball.feasible) return out;
  out.feasible = true;
  out.hull.base = Vec::Zero(d);
  out.hull.basis = Mat::Identity(d, d);
  if (ball.radius > kTol) {
    out.vertices = full_dim_vertices(a, c, ball.center);
    return out;
  }

  // Flat case: find the implicit equalities, then recurse inside their
  // solution space where the remaining rows have genuine slack.
  std::vector<int> tight;
  std::vector<int> loose;
  for (int i = 0; i < a.rows(); ++i) {
    lp::LPResult lo = lp::lp_max(a, c, Vec(-a.row(i).transpose()));
    if (lo.status != lp::LPStatus::optimal)
      throw domain_error("vertex enumeration requires a bounded region");
    if (-lo.value >= c[i] - 1e-9 * std::max(1.0, std::abs(c[i]))) tight.push_back(i);
    else loose.push_back(i);
  }
  if (tight.empty())
    throw domain_error("vertex enumeration found a flat region with no tight rows");

  Mat ae(static_cast<int>(tight.size()), d);
  Vec ce(static_cast<int>(tight.size()));
  for (size_t k = 0; k < tight.size(); ++k) {
    ae.row(static_cast<int>(k)) = a.row(tight[k]);
    ce[static_cast<int>(k)] = c[tight[k]];
  }
  Vec base = ae.colPivHouseholderQr().solve(ce);
  std::vector<Vec> rows;
  for (int i = 0; i < ae.rows(); ++i) rows.emplace_back(ae.row(i).transpose());
  Mat row_span = span_basis(rows, d);
  Mat basis = orth_complement(row_span, d);
  out.hull.base = base;
  out.hull.basis = basis;

  if (basis.cols() == 0) {
    out.vertices.push_back(base);
    return out;
  }

  Mat al(static_cast<int>(loose.size()), static_cast<int>(basis.cols()));
  Vec cl(static_cast<int>(loose.size()));
  for (size_t k = 0; k < loose.size(); ++k) {
    al.row(static_cast<int>(k)) = a.row(loose[k]) * basis;
    cl[static_cast<int>(k)] = c[loose[k]] - a.row(loose[k]).dot(base);
  }
  Mat al2;
  Vec cl2;
  if (!clean_rows(al, cl, al2, cl2)) return HRepVertices{};
  if (al2.rows() == 0)
    throw domain_error("vertex enumeration requires a bounded region");
  lp::ChebyshevResult inner = lp::chebyshev_center(al2, cl2, 1.0);
  if (!inner.feasible) {
    out.feasible = false;
    return out;
  }
  if (inner.radius <= kTol)
    throw domain_error("vertex enumeration found nested flat regions");
  std::vector<Vec> local = full_dim_vertices(al2, cl2, inner.center);
  for (const auto& y : local) push_unique(out.vertices, out.hull.to_ambient(y), kTol);
  return out;
}

LocalHRep local_hrep(const Polytope& p) {
  LocalHRep out;
  if (p.vertices.empty()) throw domain_error("empty polytope has no facet form");
  out.hull = polytope_affine_hull(p);
  const int d = out.hull.dim();
  if (d == 0) {
    out.a = Mat::Zero(0, 0);
    out.c = Vec::Zero(0);
    return out;
  }
  std::vector<Vec> local;
  local.reserve(p.vertices.size());
  for (const auto& v : p.vertices) local.push_back(out.hull.to_local(v));
  if (d == 1) {
    double lo = local[0][0], hi = local[0][0];
    for (const auto& y : local) {
      lo = std::min(lo, y[0]);
      hi = std::max(hi, y[0]);
    }
    out.a = Mat(2, 1);
    out.a << 1, -1;
    out.c = Vec(2);
    out.c << hi, -lo;
    return out;
  }
  Polytope q = make_polytope(d, local);
  FaceLattice lat = face_lattice(q);
  const int m = static_cast<int>(lat.facet_normals.size());
  out.a.resize(m, d);
  out.c.resize(m);
  for (int i = 0; i < m; ++i) {
    out.a.row(i) = lat.facet_normals[i].transpose();
    out.c[i] = lat.facet_offsets[i];
  }
  return out;
}

void ambient_hrep(const Polytope& p, Mat& a, Vec& c) {
  LocalHRep lh = local_hrep(p);
  const int n = p.ambient;
  Mat normal_dirs = orth_complement(lh.hull.basis, n);
  const int rows = static_cast<int>(lh.a.rows()) + 2 * static_cast<int>(normal_dirs.cols());
  a.resize(rows, n);
  c.resize(rows);
  int r = 0;
  for (int i = 0; i < lh.a.rows(); ++i, ++r) {
    // <a_i, B^T (x - base)> <= c_i in local coordinates.
    Vec amb = lh.hull.basis * lh.a.row(i).transpose();
    a.row(r) = amb.transpose();
    c[r] = lh.c[i] + amb.dot(lh.hull.base);
  }
  for (int k = 0; k < normal_dirs.cols(); ++k) {
    Vec u = normal_dirs.col(k);
    double off = u.dot(lh.hull.base);
    a.row(r) = u.transpose();
    c[r++] = off;
    a.row(r) = -u.transpose();
    c[r++] = -off;
  }
}

}  // namespace mv::geom
