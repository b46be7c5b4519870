#include "core/solid_angle.hpp"

#include <algorithm>
#include <cmath>

#include "core/simplex_lp.hpp"

namespace mv::geom {

namespace {

constexpr double kTol = 1e-10;

bool ray_admitted(const Vec& r, const std::vector<Vec>& halfspaces, bool strict) {
  for (const auto& h : halfspaces) {
    double v = h.dot(r);
    if (strict ? v <= kTol : v < -kTol) return false;
  }
  return true;
}

// d == 2: the section is an angular interval inside the plane spanned by the
// rays. Its endpoints are either extreme input rays or halfspace boundaries.
double arc_volume(const std::vector<Vec>& rays, const std::vector<Vec>& halfspaces) {
  const int n = static_cast<int>(rays[0].size());
  Mat basis = span_basis(rays, n);  // n x 2
  auto in_cone = [&](const Vec& dir2, const Vec& lo, const Vec& hi) {
    double c1 = lo[0] * dir2[1] - lo[1] * dir2[0];
    double c2 = dir2[0] * hi[1] - dir2[1] * hi[0];
    return c1 >= -kTol && c2 >= -kTol;
  };
  std::vector<Vec> local;
  for (const auto& r : rays) {
    Vec v = basis.transpose() * r;
    double nv = v.norm();
    if (nv > kTol) local.push_back(v / nv);
  }
  if (local.empty()) return 0.0;
  // Extreme pair of the input cone (pointed: opening < pi).
  int bi = 0, bj = 0;
  double best = -2.0;
  for (size_t i = 0; i < local.size(); ++i) {
    for (size_t j = i; j < local.size(); ++j) {
      double d = local[i].dot(local[j]);
      if (-d > best) {
        best = -d;
        bi = static_cast<int>(i);
        bj = static_cast<int>(j);
      }
    }
  }
  Vec lo = local[static_cast<size_t>(bi)], hi = local[static_cast<size_t>(bj)];
  if (lo[0] * hi[1] - lo[1] * hi[0] < 0) std::swap(lo, hi);

  std::vector<Vec> candidates;  // ambient unit directions inside everything
  auto admit = [&](const Vec& dir2) {
    if (!in_cone(dir2, lo, hi)) return;
    Vec amb = basis * dir2;
    if (ray_admitted(amb, halfspaces, false)) candidates.push_back(dir2);
  };
  for (const auto& v : local) admit(v);
  for (const auto& h : halfspaces) {
    Vec g = basis.transpose() * h;
    double ng = g.norm();
    if (ng <= kTol) continue;  // constraint does not cut this plane
    g /= ng;
    Vec p1(2), p2(2);
    p1 << -g[1], g[0];
    p2 << g[1], -g[0];
    admit(p1);
    admit(p2);
  }
  if (candidates.size() < 2) return 0.0;
  double ang = 0.0;
  for (size_t i = 0; i < candidates.size(); ++i)
    for (size_t j = i + 1; j < candidates.size(); ++j) {
      double d = std::clamp(candidates[i].dot(candidates[j]), -1.0, 1.0);
      ang = std::max(ang, std::acos(d));
    }
  return ang / 2.0;
}

// d == 3: clip the cross-section polygon of the cone on the plane <m,x> = 1
// and apply Girard's spherical-excess formula to the resulting spherical
// polygon.
double girard_volume(const std::vector<Vec>& rays, const std::vector<Vec>& halfspaces) {
  const int n = static_cast<int>(rays[0].size());
  std::vector<Vec> unit_rays;
  for (const auto& r : rays) {
    double nr = r.norm();
    if (nr > kTol) unit_rays.push_back(r / nr);
  }
  Vec m = Vec::Zero(n);
  for (const auto& r : unit_rays) m += r;
  if (m.norm() > kTol) m.normalize();
  bool ok = m.norm() > 0.5;
  for (const auto& r : unit_rays)
    if (ok && m.dot(r) <= 1e-7) ok = false;
  if (!ok) {
    // Interior direction via LP: max t s.t. <r_i, w> >= t, |w|_inf <= 1.
    const int k = static_cast<int>(unit_rays.size());
    Mat a = Mat::Zero(k + 2 * n + 1, n + 1);
    Vec b = Vec::Zero(k + 2 * n + 1);
    for (int i = 0; i < k; ++i) {
      a.block(i, 0, 1, n) = -unit_rays[static_cast<size_t>(i)].transpose();
      a(i, n) = 1.0;
    }
    for (int i = 0; i < n; ++i) {
      a(k + 2 * i, i) = 1.0;
      b[k + 2 * i] = 1.0;
      a(k + 2 * i + 1, i) = -1.0;
      b[k + 2 * i + 1] = 1.0;
    }
    a(k + 2 * n, n) = 1.0;
    b[k + 2 * n] = 1.0;
    Vec c = Vec::Zero(n + 1);
    c[n] = 1.0;
    auto r = lp::lp_max(a, b, c);
    if (r.status != lp::LPStatus::optimal || r.value <= 1e-9) return 0.0;
    m = r.x.head(n).normalized();
  }

  Mat t = orth_complement(m, n);  // n x 2
  std::vector<Vec> pts;           // 2d cross-section points
  for (const auto& r : unit_rays) {
    double d = m.dot(r);
    if (d <= 1e-9) return 0.0;  // defensive: not pointed around m
    Vec x = r / d - m;
    pts.push_back(t.transpose() * x);
  }
  // Monotone-chain hull, counterclockwise.
  std::sort(pts.begin(), pts.end(), [](const Vec& a, const Vec& b) {
    return a[0] < b[0] || (a[0] == b[0] && a[1] < b[1]);
  });
  pts.erase(std::unique(pts.begin(), pts.end(),
                        [](const Vec& a, const Vec& b) { return (a - b).norm() <= kTol; }),
            pts.end());
  auto cross2 = [](const Vec& o, const Vec& a, const Vec& b) {
    return (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0]);
  };
  std::vector<Vec> hull;
  if (pts.size() >= 3) {
    std::vector<Vec> lo, up;
    for (const auto& p : pts) {
      while (lo.size() >= 2 && cross2(lo[lo.size() - 2], lo.back(), p) <= kTol) lo.pop_back();
      lo.push_back(p);
    }
    for (auto it = pts.rbegin(); it != pts.rend(); ++it) {
      while (up.size() >= 2 && cross2(up[up.size() - 2], up.back(), *it) <= kTol) up.pop_back();
      up.push_back(*it);
    }
    hull.assign(lo.begin(), lo.end() - 1);
    hull.insert(hull.end(), up.begin(), up.end() - 1);
  }
  if (hull.size() < 3) return 0.0;

  // Sutherland-Hodgman clip by each halfspace (affine in section coords).
  for (const auto& h : halfspaces) {
    Vec g = t.transpose() * h;
    double c0 = h.dot(m);
    if (g.norm() <= kTol) {
      if (c0 < -kTol) return 0.0;
      continue;
    }
    std::vector<Vec> next;
    const size_t sz = hull.size();
    for (size_t i = 0; i < sz; ++i) {
      const Vec& a = hull[i];
      const Vec& b = hull[(i + 1) % sz];
      double fa = c0 + g.dot(a);
      double fb = c0 + g.dot(b);
      bool ina = fa >= -kTol, inb = fb >= -kTol;
      if (ina) next.push_back(a);
      if (ina != inb) {
        double s = fa / (fa - fb);
        next.push_back(a + s * (b - a));
      }
    }
    hull = std::move(next);
    if (hull.size() < 3) return 0.0;
  }

  // Spherical polygon (counterclockwise seen from outside along m).
  std::vector<Vec> sph;
  for (const auto& y : hull) {
    Vec x = m + t * y;
    Vec u = x.normalized();
    if (sph.empty() || (u - sph.back()).norm() > 1e-9) sph.push_back(u);
  }
  while (sph.size() >= 2 && (sph.front() - sph.back()).norm() <= 1e-9) sph.pop_back();
  const size_t k = sph.size();
  if (k < 3) return 0.0;
  double angle_sum = 0.0;
  for (size_t i = 0; i < k; ++i) {
    const Vec& v = sph[i];
    const Vec& u = sph[(i + k - 1) % k];
    const Vec& w = sph[(i + 1) % k];
    Vec a = u - u.dot(v) * v;
    Vec b = w - w.dot(v) * v;
    if (a.norm() <= 1e-12 || b.norm() <= 1e-12) return 0.0;
    double d = std::clamp(a.normalized().dot(b.normalized()), -1.0, 1.0);
    angle_sum += std::acos(d);
  }
  double omega = angle_sum - (static_cast<double>(k) - 2.0) * M_PI;
  return std::max(0.0, omega) / 3.0;
}

}  // namespace

double cone_section_volume(const std::vector<Vec>& rays,
                           const std::vector<Vec>& halfspaces, bool strict) {
  if (rays.empty()) return 0.0;
  int d = span_rank(rays);
  if (d == 0) return 0.0;
  if (d == 1) {
    Vec r = rays[0];
    for (const auto& cand : rays)
      if (cand.norm() > kTol) r = cand;
    r.normalize();
    bool has_opposite = false;
    for (const auto& cand : rays)
      if (cand.norm() > kTol && cand.dot(r) < 0) has_opposite = true;
    double total = ray_admitted(r, halfspaces, strict) ? 1.0 : 0.0;
    if (has_opposite) total += ray_admitted(-r, halfspaces, strict) ? 1.0 : 0.0;
    return total;
  }
  if (d == 2) return arc_volume(rays, halfspaces);
  if (d == 3) return girard_volume(rays, halfspaces);
  throw domain_error("exact cone sections are limited to spans of dimension <= 3");
}

}  // namespace mv::geom
