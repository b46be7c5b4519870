#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "core/area_measures.hpp"
#include "core/cone_selector.hpp"

using namespace mv;
using namespace mv::meas;
using geom::Polytope;

namespace {

Vec v2(double a, double b) {
  Vec v(2);
  v << a, b;
  return v;
}
Vec v3(double a, double b, double c) {
  Vec v(3);
  v << a, b, c;
  return v;
}

Polytope random_polytope(int n, int count, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  std::vector<Vec> pts;
  for (int i = 0; i < count; ++i) {
    Vec p(n);
    for (int j = 0; j < n; ++j) p[j] = u(rng);
    pts.push_back(p);
  }
  return geom::make_polytope(n, std::move(pts));
}

}  // namespace

TEST_CASE("full-ball local parallel volumes match closed forms") {
  ConeSelector full2 = full_ball_selector(2);
  ConeSelector full3 = full_ball_selector(3);
  for (double r : {0.3, 1.0, 2.5}) {
    CHECK(local_parallel_ma(geom::unit_cube(2), r, full2) ==
          doctest::Approx(1 + 4 * r + M_PI * r * r).epsilon(1e-12));
    CHECK(local_parallel_ma(geom::unit_cube(3), r, full3) ==
          doctest::Approx(1 + 6 * r + 3 * M_PI * r * r + 4.0 / 3.0 * M_PI * r * r * r)
              .epsilon(1e-12));
    Polytope tri = geom::make_polytope(2, {v2(0, 0), v2(1, 0), v2(0, 1)});
    CHECK(local_parallel_ma(tri, r, full2) ==
          doctest::Approx(0.5 + (2 + std::sqrt(2.0)) * r + M_PI * r * r).epsilon(1e-12));
  }
  // segment-in-the-plane is not full-dimensional
  CHECK_THROWS_AS(
      local_parallel_ma(geom::make_polytope(2, {v2(0, 0), v2(1, 0)}), 1.0, full2),
      domain_error);
}

TEST_CASE("origin-only selector returns the volume at every radius") {
  ConeSelector orig = origin_only_selector(2);
  Polytope sq = geom::unit_cube(2);
  for (double r : {0.0, 0.7, 3.0})
    CHECK(local_parallel_ma(sq, r, orig) == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("open first-quadrant arc on the unit square") {
  // Only the corner cone at (1,1) survives an open first-quadrant selector.
  ConeSelector open_quad;
  open_quad.ambient = 2;
  open_quad.include_origin = false;
  open_quad.regions.push_back(SphericalRegion{{v2(1, 0), v2(0, 1)}, true});
  Polytope sq = geom::unit_cube(2);
  CHECK(local_parallel_ma(sq, 1.0, open_quad) == doctest::Approx(M_PI / 4).epsilon(1e-12));

  // The closed arc also admits the two edge normals e1 and e2.
  ConeSelector closed_quad = open_quad;
  closed_quad.regions[0].open = false;
  CHECK(local_parallel_ma(sq, 1.0, closed_quad) ==
        doctest::Approx(M_PI / 4 + 2.0).epsilon(1e-12));
}

TEST_CASE("selector unions avoid double counting") {
  // Two overlapping quadrant regions covering the upper halfplane: x>=0 or
  // x<=0, both with y>=0.
  ConeSelector sel;
  sel.ambient = 2;
  sel.include_origin = false;
  sel.regions.push_back(SphericalRegion{{v2(1, 0), v2(0, 1)}, false});
  sel.regions.push_back(SphericalRegion{{v2(-1, 0), v2(0, 1)}, false});
  // Against the full plane fan of the square: upper halfplane keeps the two
  // top corners (pi/4 each), the top edge normal e2, and halves nothing else.
  Polytope sq = geom::unit_cube(2);
  double got = local_parallel_ma(sq, 1.0, sel);
  // corners (1,1) and (0,1) contribute pi/4 each, edges e1,-e1,e2 contribute
  // 1 (e2) and the side normals +-e1 lie on the boundary (closed: admitted).
  CHECK(got == doctest::Approx(M_PI / 2 + 3.0).epsilon(1e-12));
}

TEST_CASE("caps select single facet normals") {
  Vec c = v3(1, 0, 0);
  SphericalRegion cap = cap_region(c, 0.35);
  CHECK(cap.halfspaces.size() == 4);
  ConeSelector sel = cap_selector(c, 0.35);
  CHECK(selector_admits_direction(sel, c));
  CHECK_FALSE(selector_admits_direction(sel, v3(0, 1, 0)));
  CHECK_FALSE(selector_admits_direction(sel, -c));
  // a direction inside the aperture
  CHECK(selector_admits_direction(sel, v3(1, 0.2, 0).normalized()));
  CHECK_THROWS_AS(cap_region(c, 2.0), domain_error);
}

TEST_CASE("mixed values with all body slots reproduce mixed volumes") {
  std::mt19937_64 rng(61);
  for (int n = 2; n <= 3; ++n) {
    ConeSelector full = full_ball_selector(n);
    std::vector<Polytope> bodies;
    for (int i = 0; i < n; ++i) bodies.push_back(random_polytope(n, n + 6, rng));
    double direct = mixed_volume(bodies);
    CHECK(mixed_ma_bodies_q(bodies, full) == doctest::Approx(direct).epsilon(1e-9));
    // origin-plus-sphere keeps only the volume coefficient: same value
    CHECK(mixed_ma_bodies_q(bodies, origin_sphere_selector(n)) ==
          doctest::Approx(direct).epsilon(1e-9));
  }
}

TEST_CASE("origin-plus-sphere selectors kill every lower coefficient") {
  std::mt19937_64 rng(67);
  for (int n = 2; n <= 3; ++n) {
    ConeSelector sel = origin_sphere_selector(n);
    for (int k = 1; k < n; ++k) {
      std::vector<Polytope> bodies;
      for (int i = 0; i < k; ++i) bodies.push_back(random_polytope(n, n + 6, rng));
      CHECK(mixed_ma_bodies_q(bodies, sel) == doctest::Approx(0.0).epsilon(1e-8));
    }
  }
}

TEST_CASE("one body slot in the plane gives half the selected perimeter") {
  Polytope sq = geom::unit_cube(2);
  ConeSelector full = full_ball_selector(2);
  CHECK(mixed_ma_bodies_q({sq}, full) == doctest::Approx(2.0).epsilon(1e-9));
  // cap around e1 picks out the single right-hand edge (length 1): value 1/2
  ConeSelector cap = cap_selector(v2(1, 0), 0.3);
  CHECK(mixed_ma_bodies_q({sq}, cap) == doctest::Approx(0.5).epsilon(1e-9));
}

TEST_CASE("surface measure of a cap equals n times the mixed value") {
  std::mt19937_64 rng(71);
  for (int n = 2; n <= 3; ++n) {
    for (int trial = 0; trial < 4; ++trial) {
      Polytope p = random_polytope(n, n + 6, rng);
      DiscreteMeasure s = surface_area_measure(p);
      // aim a cap at one facet normal, tight enough to isolate it generically
      const Vec& target = s.atoms[trial % s.atoms.size()].loc;
      ConeSelector cap = cap_selector(target, 0.25);
      double lhs = 0.0;
      for (const Atom& a : s.atoms)
        if (selector_admits_direction(cap, a.loc)) lhs += a.weight;
      std::vector<Polytope> bodies(n - 1, p);
      CHECK(n * mixed_ma_bodies_q(bodies, cap) == doctest::Approx(lhs).epsilon(1e-8));
    }
  }
}

TEST_CASE("the bridge holds for rotated squares") {
  double ang = M_PI / 4;
  Mat rot(2, 2);
  rot << std::cos(ang), -std::sin(ang), std::sin(ang), std::cos(ang);
  std::vector<Vec> vs;
  for (const Vec& v : geom::unit_cube(2).vertices) vs.push_back(rot * v);
  Polytope sq = geom::make_polytope(2, std::move(vs));
  Vec normal = (rot * v2(1, 0)).eval();
  ConeSelector cap = cap_selector(normal, 0.3);
  // one unit edge sits under the cap
  CHECK(2 * mixed_ma_bodies_q({sq}, cap) == doctest::Approx(1.0).epsilon(1e-9));
}

TEST_CASE("distinct bodies under the full selector match polarized volumes") {
  std::mt19937_64 rng(73);
  Polytope k1 = random_polytope(3, 8, rng);
  Polytope k2 = random_polytope(3, 8, rng);
  // two body slots, one round slot: the value is symmetric, 1-homogeneous in
  // each slot, and translation invariant
  double direct = mixed_ma_bodies_q({k1, k2}, full_ball_selector(3));
  CHECK(mixed_ma_bodies_q({k2, k1}, full_ball_selector(3)) ==
        doctest::Approx(direct).epsilon(1e-10));
  Polytope k1s = geom::scale(k1, 2.0);
  CHECK(mixed_ma_bodies_q({k1s, k2}, full_ball_selector(3)) ==
        doctest::Approx(2 * direct).epsilon(1e-9));
  Polytope shifted = geom::translate(k1, v3(0.4, -0.2, 0.9));
  CHECK(mixed_ma_bodies_q({shifted, k2}, full_ball_selector(3)) ==
        doctest::Approx(direct).epsilon(1e-9));
}
