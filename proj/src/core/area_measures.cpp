#include "core/area_measures.hpp"

#include <bit>
#include <cmath>

namespace mv::meas {

double kappa(int d) {
  if (d < 0) throw domain_error("kappa: negative dimension");
  return std::pow(M_PI, d / 2.0) / std::tgamma(d / 2.0 + 1.0);
}

double binomial(int n, int k) {
  if (k < 0 || k > n) return 0.0;
  double r = 1.0;
  for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return std::round(r);
}

DiscreteMeasure surface_area_measure(const geom::Polytope& p) {
  const int n = p.ambient;
  geom::FaceLattice lat = geom::face_lattice(p);
  std::vector<Atom> atoms;
  if (lat.intrinsic_dim == n) {
    for (size_t i = 0; i < lat.facet_normals.size(); ++i)
      atoms.push_back(
          Atom{lat.facet_normals[i], lat.faces[lat.facet_face_ids[i]].rel_volume});
  } else if (lat.intrinsic_dim == n - 1) {
    double area = 0.0;
    for (const auto& f : lat.faces)
      if (f.dim == n - 1) area = f.rel_volume;
    atoms.push_back(Atom{lat.carrying_normals[0], area});
    atoms.push_back(Atom{lat.carrying_normals[1], area});
  }
  return make_measure(MeasureKind::sphere, n, std::move(atoms), true);
}

std::vector<geom::Polytope> subset_sums(const std::vector<geom::Polytope>& bodies) {
  const int k = static_cast<int>(bodies.size());
  std::vector<geom::Polytope> sums(static_cast<size_t>(1) << k);
  for (int mask = 1; mask < (1 << k); ++mask) {
    int low = std::countr_zero(static_cast<unsigned>(mask));
    int rest = mask & (mask - 1);
    sums[mask] = rest == 0 ? bodies[low] : geom::minkowski_sum(sums[rest], bodies[low]);
  }
  return sums;
}

DiscreteMeasure mixed_area_measure(const std::vector<geom::Polytope>& bodies) {
  if (bodies.empty()) throw domain_error("mixed_area_measure: no bodies");
  const int n = bodies[0].ambient;
  if (static_cast<int>(bodies.size()) != n - 1)
    throw domain_error("mixed_area_measure expects n-1 bodies in R^n");
  for (const auto& b : bodies)
    if (b.ambient != n) throw domain_error("mixed_area_measure: dimension mismatch");
  const int k = n - 1;
  std::vector<geom::Polytope> sums = subset_sums(bodies);
  double fact = 1.0;
  for (int i = 2; i <= k; ++i) fact *= i;
  std::vector<Atom> atoms;
  for (int mask = 1; mask < (1 << k); ++mask) {
    DiscreteMeasure s = surface_area_measure(sums[mask]);
    double sign = ((k - std::popcount(static_cast<unsigned>(mask))) % 2 == 0) ? 1.0 : -1.0;
    accumulate(atoms, s, sign / fact);
  }
  return make_measure(MeasureKind::sphere, n, std::move(atoms), true);
}

double mixed_volume(const std::vector<geom::Polytope>& bodies) {
  if (bodies.empty()) throw domain_error("mixed_volume: no bodies");
  const int n = bodies[0].ambient;
  if (static_cast<int>(bodies.size()) != n)
    throw domain_error("mixed_volume expects n bodies in R^n");
  for (const auto& b : bodies)
    if (b.ambient != n) throw domain_error("mixed_volume: dimension mismatch");
  if (n == 1) {
    double va = geom::volume(bodies[0]);
    DiscreteMeasure s = surface_area_measure(bodies[0]);
    double vb = 0.0;
    for (const auto& a : s.atoms) vb += geom::support_function(bodies[0], a.loc) * a.weight;
    if (s.atoms.empty()) vb = va;  // point body: length 0 on both routes
    if (std::abs(va - vb) > 1e-8 * std::max(1.0, std::abs(va)))
      throw verification_error("polarization inconsistency in dimension 1");
    return va;
  }

  // Route (a): inclusion-exclusion over volumes of Minkowski subset sums.
  std::vector<geom::Polytope> sums = subset_sums(bodies);
  double fact = 1.0;
  for (int i = 2; i <= n; ++i) fact *= i;
  double va = 0.0;
  for (int mask = 1; mask < (1 << n); ++mask) {
    double sign = ((n - std::popcount(static_cast<unsigned>(mask))) % 2 == 0) ? 1.0 : -1.0;
    va += sign * geom::volume(sums[mask]);
  }
  va /= fact;

  // Route (b): support-function integral against the mixed area measure of
  // the remaining bodies.
  std::vector<geom::Polytope> rest(bodies.begin() + 1, bodies.end());
  DiscreteMeasure s = mixed_area_measure(rest);
  double vb = 0.0;
  for (const auto& a : s.atoms) vb += geom::support_function(bodies[0], a.loc) * a.weight;
  vb /= n;

  if (std::abs(va - vb) > 1e-8 * std::max({1.0, std::abs(va), std::abs(vb)}))
    throw verification_error("polarization inconsistency between volume and "
                             "surface-integral routes of the mixed volume");
  return va;
}

IntrinsicEstimate intrinsic_volume(const geom::Polytope& p, int j, int refinement) {
  const int n = p.ambient;
  if (j < 0 || j > n) throw domain_error("intrinsic_volume: index out of range");
  if (j == 0) return {1.0, 0.0};
  if (j == n) return {geom::volume(p), 0.0};
  geom::BallApprox ball = geom::ball_approx(n, refinement);
  std::vector<geom::Polytope> bodies;
  for (int i = 0; i < j; ++i) bodies.push_back(p);
  for (int i = j; i < n; ++i) bodies.push_back(ball.body);
  double v = mixed_volume(bodies);
  return {binomial(n, j) / kappa(n - j) * v, ball.delta};
}

AreaMeasureEstimate area_measure_j(const geom::Polytope& p, int j, int refinement) {
  const int n = p.ambient;
  if (j < 0 || j > n - 1) throw domain_error("area_measure_j: index out of range");
  std::vector<geom::Polytope> bodies;
  for (int i = 0; i < j; ++i) bodies.push_back(p);
  double delta = 0.0;
  if (j < n - 1) {
    geom::BallApprox ball = geom::ball_approx(n, refinement);
    delta = ball.delta;
    for (int i = j; i < n - 1; ++i) bodies.push_back(ball.body);
  }
  return {mixed_area_measure(bodies), delta};
}

}  // namespace mv::meas
