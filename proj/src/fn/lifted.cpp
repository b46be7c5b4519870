#include "fn/lifted.hpp"

#include <algorithm>
#include <cmath>
#include <set>

#include "core/quickhull.hpp"
#include "core/simplex_lp.hpp"
#include "core/tolerances.hpp"

namespace mv::fn {

namespace {
constexpr double kTol = 1e-9;
}

LiftedLower lifted_lower_hull(const std::vector<Piece>& pieces, int ambient) {
  LiftedLower out;
  const int m = static_cast<int>(pieces.size());
  if (m == 0) throw domain_error("a piecewise-linear function needs at least one piece");

  std::vector<Vec> slopes;
  slopes.reserve(pieces.size());
  for (const auto& p : pieces) slopes.push_back(p.a);
  out.chart = affine_hull(slopes);
  const int d = out.chart.dim();

  if (d == 0) {
    int best = 0;
    for (int i = 1; i < m; ++i)
      if (pieces[i].b < pieces[best].b) best = i;
    LowerFacet f;
    f.piece_ids = {best};
    f.slope = Vec::Zero(0);
    f.offset = -pieces[best].b;
    out.facets.push_back(std::move(f));
    out.vertex_ids = {best};
    return out;
  }

  std::vector<Vec> lifted;
  lifted.reserve(pieces.size() + 1);
  double bmax = pieces[0].b, bmin = pieces[0].b;
  Vec tmean = Vec::Zero(d);
  for (const auto& p : pieces) {
    Vec t = out.chart.to_local(p.a);
    Vec l(d + 1);
    l.head(d) = t;
    l[d] = p.b;
    lifted.push_back(std::move(l));
    bmax = std::max(bmax, p.b);
    bmin = std::min(bmin, p.b);
    tmean += t / static_cast<double>(m);
  }

  int cap_id = -1;
  if (affine_hull(lifted).dim() < d + 1) {
    // All lifted points sit on one non-vertical hyperplane; a point strictly
    // above it makes the hull full-dimensional without touching the lower side.
    Vec cap(d + 1);
    cap.head(d) = tmean;
    cap[d] = bmax + 1.0 + (bmax - bmin);
    cap_id = m;
    lifted.push_back(std::move(cap));
  }

  geom::HullResult hull = geom::quickhull(lifted);
  std::set<int> verts;
  for (const auto& hf : hull.facets) {
    if (hf.normal[d] >= -kTol) continue;
    if (cap_id >= 0 &&
        std::find(hf.vertex_ids.begin(), hf.vertex_ids.end(), cap_id) != hf.vertex_ids.end())
      continue;
    LowerFacet f;
    f.piece_ids = hf.vertex_ids;
    f.slope = -hf.normal.head(d) / hf.normal[d];
    f.offset = -hf.offset / hf.normal[d];
    for (int v : f.piece_ids) verts.insert(v);
    out.facets.push_back(std::move(f));
  }
  out.vertex_ids.assign(verts.begin(), verts.end());
  return out;
}

Vec facet_ambient_slope(const LiftedLower& ll, const LowerFacet& f) {
  return ll.chart.basis * f.slope;
}

double facet_ambient_offset(const LiftedLower& ll, const LowerFacet& f) {
  return f.offset + (ll.chart.basis * f.slope).dot(ll.chart.base);
}

std::vector<std::vector<int>> lower_face_piece_sets(const LiftedLower& ll) {
  std::set<std::vector<int>> sets;
  for (const auto& f : ll.facets) sets.insert(f.piece_ids);
  for (int v : ll.vertex_ids) sets.insert(std::vector<int>{v});
  // Faces of a polytope are closed under intersection; iterate to a fixpoint.
  bool grew = true;
  while (grew) {
    grew = false;
    std::vector<std::vector<int>> cur(sets.begin(), sets.end());
    for (size_t i = 0; i < cur.size(); ++i)
      for (size_t j = i + 1; j < cur.size(); ++j) {
        std::vector<int> meet;
        std::set_intersection(cur[i].begin(), cur[i].end(), cur[j].begin(), cur[j].end(),
                              std::back_inserter(meet));
        if (!meet.empty() && sets.insert(meet).second) grew = true;
      }
  }
  return {sets.begin(), sets.end()};
}

std::optional<Vec> face_representative(const std::vector<Piece>& pieces, int ambient,
                                       const std::vector<int>& face) {
  const int m = static_cast<int>(pieces.size());
  const int s0 = face.at(0);
  double scale = 1.0;
  for (const auto& p : pieces)
    scale = std::max({scale, p.a.lpNorm<Eigen::Infinity>(), std::abs(p.b)});
  const double box = 100.0 * scale;

  std::vector<char> in_face(m, 0);
  for (int i : face) in_face[static_cast<size_t>(i)] = 1;

  // Variables (x, t): maximize the activity margin t of the face's pieces
  // over everyone else, with ties inside the face forced as equalities.
  std::vector<Vec> rows;
  std::vector<double> rhs;
  auto add_row = [&](const Vec& ax, double at, double c) {
    Vec r(ambient + 1);
    r.head(ambient) = ax;
    r[ambient] = at;
    rows.push_back(std::move(r));
    rhs.push_back(c);
  };
  for (int i : face) {
    if (i == s0) continue;
    Vec diff = pieces[static_cast<size_t>(i)].a - pieces[static_cast<size_t>(s0)].a;
    double db = pieces[static_cast<size_t>(i)].b - pieces[static_cast<size_t>(s0)].b;
    add_row(diff, 0.0, db);
    add_row(-diff, 0.0, -db);
  }
  for (int k = 0; k < m; ++k) {
    if (in_face[static_cast<size_t>(k)]) continue;
    Vec diff = pieces[static_cast<size_t>(k)].a - pieces[static_cast<size_t>(s0)].a;
    double db = pieces[static_cast<size_t>(k)].b - pieces[static_cast<size_t>(s0)].b;
    add_row(diff, 1.0, db);
  }
  add_row(Vec::Zero(ambient), 1.0, 1.0);
  for (int i = 0; i < ambient; ++i) {
    Vec e = Vec::Zero(ambient);
    e[i] = 1.0;
    add_row(e, 0.0, box);
    add_row(-e, 0.0, box);
  }

  Mat a(static_cast<int>(rows.size()), ambient + 1);
  Vec c(static_cast<int>(rows.size()));
  for (size_t r = 0; r < rows.size(); ++r) {
    a.row(static_cast<int>(r)) = rows[r].transpose();
    c[static_cast<int>(r)] = rhs[r];
  }
  Vec obj = Vec::Zero(ambient + 1);
  obj[ambient] = 1.0;
  lp::LPResult res = lp::lp_max(a, c, obj);
  if (res.status != lp::LPStatus::optimal || res.value <= kTol) return std::nullopt;
  return Vec(res.x.head(ambient));
}

}  // namespace mv::fn
