#include "core/cone_selector.hpp"

#include <cmath>
#include <stdexcept>

#include "core/area_measures.hpp"
#include "core/linalg.hpp"
#include "core/solid_angle.hpp"
#include "core/tolerances.hpp"

namespace mv::meas {
namespace {

constexpr double kTol = 1e-9;

bool region_admits(const SphericalRegion& reg, const Vec& u) {
  for (const Vec& h : reg.halfspaces) {
    double v = h.dot(u);
    if (reg.open ? v <= kTol : v < -kTol) return false;
  }
  return true;
}

}  // namespace

ConeSelector full_ball_selector(int n) {
  ConeSelector sel;
  sel.ambient = n;
  sel.regions.push_back(SphericalRegion{});
  return sel;
}

ConeSelector origin_only_selector(int n) {
  ConeSelector sel;
  sel.ambient = n;
  sel.include_radial = false;
  sel.include_sphere = false;
  return sel;
}

ConeSelector origin_sphere_selector(int n) {
  ConeSelector sel;
  sel.ambient = n;
  sel.regions.push_back(SphericalRegion{});
  sel.include_radial = false;
  return sel;
}

SphericalRegion cap_region(const Vec& center, double aperture, bool open) {
  int n = static_cast<int>(center.size());
  Vec c = unit(center);
  if (n < 1 || n > 3) throw domain_error("cap regions are limited to ambient dimension <= 3");
  if (!(aperture > 0.0 && aperture < M_PI / 2))
    throw domain_error("cap aperture must lie in (0, pi/2)");
  SphericalRegion reg;
  reg.open = open;
  if (n == 1) {
    reg.halfspaces.push_back(c);
    return reg;
  }
  Mat cb(n, 1);
  cb.col(0) = c;
  Mat tangents = orth_complement(cb, n);
  for (int i = 0; i < tangents.cols(); ++i) {
    Vec t = tangents.col(i);
    reg.halfspaces.push_back(std::sin(aperture) * c + std::cos(aperture) * t);
    reg.halfspaces.push_back(std::sin(aperture) * c - std::cos(aperture) * t);
  }
  return reg;
}

ConeSelector cap_selector(const Vec& center, double aperture, bool open) {
  ConeSelector sel;
  sel.ambient = static_cast<int>(center.size());
  sel.regions.push_back(cap_region(center, aperture, open));
  return sel;
}

bool selector_admits_direction(const ConeSelector& sel, const Vec& u) {
  if (!sel.include_sphere) return false;
  for (const auto& reg : sel.regions)
    if (region_admits(reg, u)) return true;
  return false;
}

double selector_cone_volume(const ConeSelector& sel, const std::vector<Vec>& rays) {
  if (sel.regions.empty()) return 0.0;
  std::vector<Vec> nz;
  for (const Vec& r : rays)
    if (r.norm() > kTol) nz.push_back(r);
  if (nz.empty()) return 0.0;
  int d = span_rank(nz);
  if (d == 1) {
    // The cone meets the sphere in at most two antipodal points; each admitted
    // point contributes a unit segment. Region openness matters exactly here.
    Vec dir = unit(nz[0]);
    std::vector<Vec> points{dir};
    for (const Vec& r : nz)
      if (unit(r).dot(dir) < 0.0) {
        points.push_back(-dir);
        break;
      }
    double total = 0.0;
    for (const Vec& u : points) {
      for (const auto& reg : sel.regions)
        if (region_admits(reg, u)) {
          total += 1.0;
          break;
        }
    }
    return total;
  }
  // Inclusion-exclusion over region subsets; boundaries are null sets in
  // dimension >= 2, so openness is immaterial.
  double total = 0.0;
  size_t m = sel.regions.size();
  for (size_t mask = 1; mask < (size_t{1} << m); ++mask) {
    std::vector<Vec> hs;
    int bits = 0;
    for (size_t i = 0; i < m; ++i)
      if (mask & (size_t{1} << i)) {
        ++bits;
        hs.insert(hs.end(), sel.regions[i].halfspaces.begin(),
                  sel.regions[i].halfspaces.end());
      }
    double v = geom::cone_section_volume(nz, hs, false);
    total += (bits % 2 == 1) ? v : -v;
  }
  return total;
}

double local_parallel_ma(const geom::Polytope& p, double r, const ConeSelector& sel) {
  int n = p.ambient;
  if (n < 1 || n > 3)
    throw domain_error("local parallel volumes are limited to ambient dimension <= 3");
  if (sel.ambient != n) throw domain_error("selector dimension mismatch");
  if (r < 0.0) throw domain_error("parallel radius must be nonnegative");
  geom::FaceLattice lat = geom::face_lattice(p);
  if (lat.intrinsic_dim != n)
    throw domain_error("local parallel volumes require a full-dimensional body");
  double total = sel.include_origin ? lat.faces.back().rel_volume : 0.0;
  if (!sel.include_radial || sel.regions.empty() || r == 0.0) return total;
  for (size_t fi = 0; fi + 1 < lat.faces.size(); ++fi) {
    const geom::Face& f = lat.faces[fi];
    std::vector<Vec> rays;
    rays.reserve(lat.containing_facets[fi].size());
    for (int k : lat.containing_facets[fi]) rays.push_back(lat.facet_normals[k]);
    double cone = selector_cone_volume(sel, rays);
    if (cone > 0.0)
      total += f.rel_volume * std::pow(r, n - f.dim) * cone;
  }
  return total;
}

double mixed_ma_bodies_q(const std::vector<geom::Polytope>& bodies,
                         const ConeSelector& sel) {
  int k = static_cast<int>(bodies.size());
  if (k == 0) throw domain_error("at least one body slot is required");
  int n = bodies[0].ambient;
  for (const auto& b : bodies)
    if (b.ambient != n) throw domain_error("body dimension mismatch");
  if (k > n) throw domain_error("more body slots than the ambient dimension allows");

  // Polarize over the body slots; in each subset sum, read off the r^{n-k}
  // coefficient of r -> local_parallel_ma(S, r, sel), a degree-n polynomial.
  int deg = n + 1;
  std::vector<double> nodes(deg);
  for (int i = 0; i < deg; ++i) nodes[i] = double(i + 1) / double(n + 1);
  Mat vander(deg, deg);
  for (int i = 0; i < deg; ++i)
    for (int j = 0; j < deg; ++j) vander(i, j) = std::pow(nodes[i], n - j);
  Eigen::FullPivLU<Mat> lu(vander);

  double acc = 0.0;
  for (size_t mask = 1; mask < (size_t{1} << k); ++mask) {
    geom::Polytope s;
    int bits = 0;
    bool first = true;
    for (int i = 0; i < k; ++i)
      if (mask & (size_t{1} << i)) {
        ++bits;
        s = first ? bodies[i] : geom::minkowski_sum(s, bodies[i]);
        first = false;
      }
    if (geom::intrinsic_dim(s) != n)
      throw domain_error(
          "mixed Monge-Ampere with cone selectors requires full-dimensional subset sums");
    Vec vals(deg);
    for (int i = 0; i < deg; ++i) vals(i) = local_parallel_ma(s, nodes[i], sel);
    Vec coef = lu.solve(vals);
    double rv = 0.5 / double(n + 1);
    double pred = 0.0;
    for (int j = 0; j < deg; ++j) pred += coef(j) * std::pow(rv, n - j);
    double scale = std::max(1.0, vals.cwiseAbs().maxCoeff());
    if (std::abs(pred - local_parallel_ma(s, rv, sel)) > 1e-8 * scale)
      throw verification_error("coefficient extraction unstable");
    double dk = coef(k) / binomial(n, k);
    acc += ((k - bits) % 2 == 0 ? 1.0 : -1.0) * dk;
  }
  double fact = 1.0;
  for (int i = 2; i <= k; ++i) fact *= i;
  return acc / fact;
}

}  // namespace mv::meas
