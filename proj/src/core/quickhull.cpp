#include "core/quickhull.hpp"

#include <algorithm>
#include <map>
#include <set>

namespace mv::geom {

namespace {

struct QFacet {
  std::vector<int> vtx;    // d point indices spanning a simplex facet
  std::vector<int> neigh;  // neigh[i] lies across the ridge vtx \ {vtx[i]}
  Vec normal;
  double offset = 0.0;
  std::vector<int> outside;  // conflict list
  int far_pt = -1;
  double far_dist = 0.0;
  bool dead = false;
};

// Hyperplane through the d points vtx, oriented away from `interior`.
bool facet_plane(const std::vector<Vec>& pts, const std::vector<int>& vtx,
                 const Vec& interior, double eps, Vec& normal, double& offset) {
  const int d = static_cast<int>(pts[0].size());
  Mat a(d - 1, d);
  for (int i = 1; i < d; ++i) a.row(i - 1) = (pts[vtx[i]] - pts[vtx[0]]).transpose();
  Eigen::JacobiSVD<Mat> svd(a, Eigen::ComputeFullV);
  if (d >= 2 && svd.singularValues()[d - 2] <= eps) return false;  // flat simplex
  Vec u = svd.matrixV().col(d - 1);
  double b = u.dot(pts[vtx[0]]);
  if (u.dot(interior) - b > 0) {
    u = -u;
    b = -b;
  }
  normal = u;
  offset = b;
  return true;
}

std::vector<int> initial_simplex(const std::vector<Vec>& pts, double eps) {
  const int d = static_cast<int>(pts[0].size());
  int first = 0;
  for (int i = 1; i < static_cast<int>(pts.size()); ++i)
    if (lex_less(pts[i], pts[first])) first = i;
  std::vector<int> chosen{first};
  Vec base = pts[first];
  Mat basis(d, 0);
  while (static_cast<int>(chosen.size()) < d + 1) {
    int best = -1;
    double best_norm = eps;
    Vec best_res;
    for (int i = 0; i < static_cast<int>(pts.size()); ++i) {
      Vec r = pts[i] - base;
      if (basis.cols() > 0) r -= basis * (basis.transpose() * r);
      double nr = r.norm();
      if (nr > best_norm) {
        best_norm = nr;
        best = i;
        best_res = std::move(r);
      }
    }
    if (best < 0) throw domain_error("quickhull: input is not full-dimensional");
    chosen.push_back(best);
    if (static_cast<int>(chosen.size()) <= d) {
      basis.conservativeResize(d, basis.cols() + 1);
      basis.col(basis.cols() - 1) = best_res / best_norm;
    }
  }
  return chosen;
}

}  // namespace

HullResult quickhull(const std::vector<Vec>& pts) {
  const int d = static_cast<int>(pts.at(0).size());
  if (d < 2) throw domain_error("quickhull requires dimension >= 2");
  const int m = static_cast<int>(pts.size());
  const double eps = tol::geom_for_scale(max_abs_coord(pts));

  std::vector<int> init = initial_simplex(pts, eps);
  Vec interior = Vec::Zero(d);
  for (int id : init) interior += pts[id];
  interior /= static_cast<double>(init.size());

  std::vector<QFacet> facets;
  facets.reserve(64);
  // One facet per omitted initial point; neighbor across vtx[i] is the facet
  // omitting that very point.
  for (int j = 0; j <= d; ++j) {
    QFacet f;
    for (int t = 0; t <= d; ++t)
      if (t != j) f.vtx.push_back(init[t]);
    f.neigh.resize(d);
    for (int i = 0; i < d; ++i) {
      int omitted = f.vtx[i];
      for (int t = 0; t <= d; ++t)
        if (init[t] == omitted) f.neigh[i] = t;
    }
    if (!facet_plane(pts, f.vtx, interior, eps, f.normal, f.offset))
      throw domain_error("quickhull: degenerate initial simplex");
    facets.push_back(std::move(f));
  }

  std::set<int> init_set(init.begin(), init.end());
  for (int i = 0; i < m; ++i) {
    if (init_set.count(i)) continue;
    for (auto& f : facets) {
      double dist = f.normal.dot(pts[i]) - f.offset;
      if (dist > eps) {
        f.outside.push_back(i);
        if (dist > f.far_dist) {
          f.far_dist = dist;
          f.far_pt = i;
        }
        break;
      }
    }
  }

  std::vector<int> stack;
  while (true) {
    // Global farthest conflict point next: robust processing order.
    int fi = -1;
    double best = eps;
    for (int i = 0; i < static_cast<int>(facets.size()); ++i)
      if (!facets[i].dead && !facets[i].outside.empty() && facets[i].far_dist > best) {
        best = facets[i].far_dist;
        fi = i;
      }
    if (fi < 0) break;
    const int apex = facets[fi].far_pt;

    // Visible region via neighbor BFS.
    std::vector<int> visible;
    std::set<int> vis_set;
    stack.assign(1, fi);
    vis_set.insert(fi);
    while (!stack.empty()) {
      int cur = stack.back();
      stack.pop_back();
      visible.push_back(cur);
      for (int nb : facets[cur].neigh) {
        if (vis_set.count(nb) || facets[nb].dead) continue;
        if (facets[nb].normal.dot(pts[apex]) - facets[nb].offset > eps) {
          vis_set.insert(nb);
          stack.push_back(nb);
        }
      }
    }

    // Horizon ridges and the cone of new facets over them.
    std::vector<int> new_ids;
    std::map<std::vector<int>, std::pair<int, int>> open_ridges;  // ridge -> (facet, slot)
    for (int v : visible) {
      for (int i = 0; i < d; ++i) {
        int g = facets[v].neigh[i];
        if (vis_set.count(g)) continue;
        QFacet nf;
        for (int t = 0; t < d; ++t)
          if (t != i) nf.vtx.push_back(facets[v].vtx[t]);
        nf.vtx.push_back(apex);
        nf.neigh.assign(d, -1);
        if (!facet_plane(pts, nf.vtx, interior, eps, nf.normal, nf.offset))
          throw domain_error("quickhull: degenerate cone facet (ill-conditioned input)");
        int nid = static_cast<int>(facets.size());
        // Across the horizon ridge (the slot of `apex`) lies the old facet g.
        nf.neigh[d - 1] = g;
        for (int t = 0; t < d; ++t)
          if (facets[g].neigh[t] == v) facets[g].neigh[t] = nid;
        facets.push_back(std::move(nf));
        new_ids.push_back(nid);
      }
    }
    // Wire the internal ridges (those containing the apex) among new facets.
    for (int nid : new_ids) {
      for (int i = 0; i + 1 < d; ++i) {  // slot d-1 is the horizon ridge
        std::vector<int> ridge;
        for (int t = 0; t < d; ++t)
          if (t != i) ridge.push_back(facets[nid].vtx[t]);
        std::sort(ridge.begin(), ridge.end());
        auto it = open_ridges.find(ridge);
        if (it == open_ridges.end()) {
          open_ridges.emplace(std::move(ridge), std::make_pair(nid, i));
        } else {
          facets[nid].neigh[i] = it->second.first;
          facets[it->second.first].neigh[it->second.second] = nid;
          open_ridges.erase(it);
        }
      }
    }
    if (!open_ridges.empty())
      throw domain_error("quickhull: non-manifold horizon (ill-conditioned input)");

    // Re-home conflict points of the defeated facets.
    std::vector<int> orphans;
    for (int v : visible) {
      facets[v].dead = true;
      orphans.insert(orphans.end(), facets[v].outside.begin(), facets[v].outside.end());
      facets[v].outside.clear();
    }
    for (int p : orphans) {
      if (p == apex) continue;
      for (int nid : new_ids) {
        double dist = facets[nid].normal.dot(pts[p]) - facets[nid].offset;
        if (dist > eps) {
          facets[nid].outside.push_back(p);
          if (dist > facets[nid].far_dist) {
            facets[nid].far_dist = dist;
            facets[nid].far_pt = p;
          }
          break;
        }
      }
    }
  }

  // Merge coplanar simplicial facets into polytope facets.
  HullResult out;
  for (int i = 0; i < static_cast<int>(facets.size()); ++i) {
    if (facets[i].dead) continue;
    int found = -1;
    for (int g = 0; g < static_cast<int>(out.facets.size()); ++g) {
      // Normal *difference*, not the cosine: 1 - dot <= 1e-7 would admit
      // angles up to ~4.5e-4 and glue genuinely distinct shallow corners.
      if ((out.facets[g].normal - facets[i].normal).norm() <= 1e-7 &&
          std::abs(out.facets[g].offset - facets[i].offset) <=
              1e-7 * (1.0 + std::abs(out.facets[g].offset)))
        found = g;
    }
    if (found < 0) {
      HullFacet hf;
      hf.normal = facets[i].normal;
      hf.offset = facets[i].offset;
      out.facets.push_back(std::move(hf));
      found = static_cast<int>(out.facets.size()) - 1;
    }
    auto& ids = out.facets[found].vertex_ids;
    ids.insert(ids.end(), facets[i].vtx.begin(), facets[i].vtx.end());
  }
  std::set<int> all_vertices;
  for (auto& f : out.facets) {
    std::sort(f.vertex_ids.begin(), f.vertex_ids.end());
    f.vertex_ids.erase(std::unique(f.vertex_ids.begin(), f.vertex_ids.end()),
                       f.vertex_ids.end());
    all_vertices.insert(f.vertex_ids.begin(), f.vertex_ids.end());
  }
  out.vertex_ids.assign(all_vertices.begin(), all_vertices.end());
  return out;
}

double hull_max_violation(const std::vector<Vec>& pts, const HullResult& h) {
  double worst = 0.0;
  for (const auto& f : h.facets)
    for (const auto& p : pts) worst = std::max(worst, f.normal.dot(p) - f.offset);
  return worst;
}

}  // namespace mv::geom
