#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "core/area_measures.hpp"

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

TEST_CASE("surface area measure of the unit cube") {
  DiscreteMeasure s = surface_area_measure(geom::unit_cube(3));
  REQUIRE(s.atoms.size() == 6);
  for (const auto& a : s.atoms) {
    CHECK(a.weight == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(a.loc.cwiseAbs().maxCoeff() == doctest::Approx(1.0));
  }
  CHECK(total_mass(s) == doctest::Approx(6.0).epsilon(1e-12));
}

TEST_CASE("surface area measure of lower-dimensional bodies") {
  Polytope sq = geom::make_polytope(3, {v3(0, 0, 0), v3(1, 0, 0), v3(0, 1, 0), v3(1, 1, 0)});
  DiscreteMeasure s = surface_area_measure(sq);
  REQUIRE(s.atoms.size() == 2);
  CHECK(s.atoms[0].weight == doctest::Approx(1.0));
  CHECK(s.atoms[1].weight == doctest::Approx(1.0));
  CHECK(std::abs(s.atoms[0].loc[2]) == doctest::Approx(1.0));

  Polytope seg = geom::segment(v3(0, 0, 0), v3(1, 1, 1));
  CHECK(surface_area_measure(seg).atoms.empty());

  // Dimension 1: endpoints with unit weights.
  Vec a(1), b(1);
  a[0] = -2.0;
  b[0] = 5.0;
  DiscreteMeasure s1 = surface_area_measure(geom::make_polytope(1, {a, b}));
  REQUIRE(s1.atoms.size() == 2);
  CHECK(s1.atoms[0].loc[0] == doctest::Approx(-1.0));
  CHECK(s1.atoms[0].weight == doctest::Approx(1.0));
  CHECK(s1.atoms[1].weight == doctest::Approx(1.0));
}

TEST_CASE("surface area measures close up (centroid identity)") {
  std::mt19937_64 rng(2024);
  for (int n = 2; n <= 4; ++n) {
    Polytope p = random_polytope(n, 12, rng);
    DiscreteMeasure s = surface_area_measure(p);
    Vec centroid = Vec::Zero(n);
    for (const auto& a : s.atoms) centroid += a.weight * a.loc;
    CAPTURE(n);
    CHECK(centroid.norm() <= 1e-10);
  }
}

TEST_CASE("surface area measure is rotation covariant") {
  std::mt19937_64 rng(7);
  Polytope p = random_polytope(3, 10, rng);
  std::normal_distribution<double> g;
  Mat a(3, 3);
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) a(i, j) = g(rng);
  Eigen::HouseholderQR<Mat> qr(a);
  Mat rot = qr.householderQ();
  std::vector<Vec> rotated;
  for (const auto& v : p.vertices) rotated.push_back(rot * v);
  DiscreteMeasure s_rot = surface_area_measure(geom::make_polytope(3, rotated));
  DiscreteMeasure s = surface_area_measure(p);
  std::vector<Atom> pushed;
  for (const auto& at : s.atoms) pushed.push_back(Atom{rot * at.loc, at.weight});
  DiscreteMeasure s_pushed = make_measure(MeasureKind::sphere, 3, pushed, true);
  double worst = 0.0;
  CHECK(measures_close(s_rot, s_pushed, 1e-9, 1e-9, &worst));
  CAPTURE(worst);
}

TEST_CASE("mixed area measure of two axis segments") {
  Vec o = Vec::Zero(3);
  DiscreteMeasure s = mixed_area_measure(
      {geom::segment(o, v3(1, 0, 0)), geom::segment(o, v3(0, 1, 0))});
  REQUIRE(s.atoms.size() == 2);
  CHECK(s.atoms[0].loc[2] == doctest::Approx(-1.0));
  CHECK(s.atoms[0].weight == doctest::Approx(0.5).epsilon(1e-12));
  CHECK(s.atoms[1].loc[2] == doctest::Approx(1.0));
  CHECK(s.atoms[1].weight == doctest::Approx(0.5).epsilon(1e-12));
}

TEST_CASE("mixed area measure diagonal recovers the surface measure") {
  std::mt19937_64 rng(11);
  Polytope p = random_polytope(3, 9, rng);
  DiscreteMeasure mixed = mixed_area_measure({p, p});
  DiscreteMeasure plain = surface_area_measure(p);
  double worst = 0.0;
  CHECK(measures_close(mixed, plain, 1e-9, 1e-8, &worst));
  CAPTURE(worst);
}

TEST_CASE("mixed volume: diagonal, cube, permutations, translation") {
  std::mt19937_64 rng(13);
  Polytope p = random_polytope(3, 10, rng);
  CHECK(mixed_volume({p, p, p}) == doctest::Approx(geom::volume(p)).epsilon(1e-9));
  Polytope c = geom::unit_cube(3);
  CHECK(mixed_volume({c, c, c}) == doctest::Approx(1.0).epsilon(1e-10));

  Polytope q = random_polytope(3, 8, rng);
  Polytope r = random_polytope(3, 8, rng);
  double v1 = mixed_volume({p, q, r});
  double v2 = mixed_volume({r, p, q});
  double v3m = mixed_volume({q, r, p});
  CHECK(v1 == doctest::Approx(v2).epsilon(1e-9));
  CHECK(v1 == doctest::Approx(v3m).epsilon(1e-9));

  Vec t = v3(0.3, -0.7, 1.1);
  CHECK(mixed_volume({geom::translate(p, t), q, r}) == doctest::Approx(v1).epsilon(1e-9));
}

TEST_CASE("mixed volume of axis segments is 1/n!") {
  for (int n = 2; n <= 4; ++n) {
    std::vector<Polytope> segs;
    for (int i = 0; i < n; ++i) {
      Vec e = Vec::Zero(n);
      e[i] = 1.0;
      segs.push_back(geom::segment(Vec::Zero(n), e));
    }
    double fact = 1.0;
    for (int i = 2; i <= n; ++i) fact *= i;
    CAPTURE(n);
    CHECK(std::abs(mixed_volume(segs) - 1.0 / fact) <= 1e-12);
  }
}

TEST_CASE("mixed volume is Minkowski multilinear") {
  std::mt19937_64 rng(17);
  Polytope k1 = random_polytope(3, 8, rng);
  Polytope k1b = random_polytope(3, 8, rng);
  Polytope k2 = random_polytope(3, 8, rng);
  Polytope k3 = random_polytope(3, 8, rng);
  double lam = 0.6, mu = 1.7;
  Polytope combo = geom::minkowski_sum(geom::scale(k1, lam), geom::scale(k1b, mu));
  double lhs = mixed_volume({combo, k2, k3});
  double rhs = lam * mixed_volume({k1, k2, k3}) + mu * mixed_volume({k1b, k2, k3});
  CHECK(lhs == doctest::Approx(rhs).epsilon(1e-9));
}

TEST_CASE("Steiner polynomial matches direct parallel volumes") {
  std::mt19937_64 rng(19);
  for (const Polytope& k : {geom::unit_cube(2), geom::unit_cube(3),
                            random_polytope(3, 9, rng)}) {
    const int n = k.ambient;
    geom::BallApprox ball = geom::ball_approx(n, n == 2 ? 16 : 3);
    std::vector<double> coeff(n + 1);
    for (int j = 0; j <= n; ++j) {
      std::vector<Polytope> bodies;
      for (int i = 0; i < j; ++i) bodies.push_back(k);
      for (int i = j; i < n; ++i) bodies.push_back(ball.body);
      coeff[j] = binomial(n, j) * mixed_volume(bodies);
    }
    for (double r : {0.25, 1.0, 2.0}) {
      double direct = geom::volume(geom::minkowski_sum(k, geom::scale(ball.body, r)));
      double predicted = 0.0;
      for (int j = 0; j <= n; ++j) predicted += coeff[j] * std::pow(r, n - j);
      CAPTURE(n);
      CAPTURE(r);
      CHECK(direct == doctest::Approx(predicted).epsilon(1e-9));
    }
  }
}

TEST_CASE("intrinsic volumes of the unit cube") {
  Polytope c3 = geom::unit_cube(3);
  CHECK(intrinsic_volume(c3, 0, 1).value == 1.0);
  CHECK(intrinsic_volume(c3, 3, 1).value == doctest::Approx(1.0).epsilon(1e-12));
  for (int j : {1, 2}) {
    IntrinsicEstimate est = intrinsic_volume(c3, j, 4);
    double bound = 1.0 - std::pow(1.0 - est.delta, 3 - j);
    CAPTURE(j);
    // Inscribed approximant: exact value overshoots by at most the delta bound.
    CHECK(est.value <= binomial(3, j) * (1.0 + 1e-9));
    CHECK(est.value >= binomial(3, j) * (1.0 - 3 * bound));
    IntrinsicEstimate coarse = intrinsic_volume(c3, j, 2);
    CHECK(std::abs(est.value - binomial(3, j)) <
          std::abs(coarse.value - binomial(3, j)) + 1e-12);
  }
  Polytope c2 = geom::unit_cube(2);
  IntrinsicEstimate perim = intrinsic_volume(c2, 1, 64);
  CHECK(perim.value == doctest::Approx(2.0).epsilon(1e-3));  // half-perimeter
}

TEST_CASE("area measure S_0 in the plane approximates the circle") {
  std::mt19937_64 rng(23);
  Polytope p = random_polytope(2, 7, rng);
  AreaMeasureEstimate est = area_measure_j(p, 0, 16);
  CHECK(total_mass(est.measure) == doctest::Approx(2.0 * M_PI).epsilon(1e-3));
  AreaMeasureEstimate exact = area_measure_j(p, 1, 1);
  CHECK(exact.delta == 0.0);
  double worst = 0.0;
  CHECK(measures_close(exact.measure, surface_area_measure(p), 1e-9, 1e-9, &worst));
}

TEST_CASE("measure canonicalization rules") {
  Vec e1 = v2(1, 0);
  Vec e1_eps = v2(1, 5e-10);
  e1_eps.normalize();
  std::vector<Atom> atoms{{e1, 0.5}, {e1_eps, 0.25}, {v2(0, 1), 1e-13}};
  DiscreteMeasure m = make_measure(MeasureKind::sphere, 2, atoms, true);
  REQUIRE(m.atoms.size() == 1);  // merged + tiny atom dropped
  CHECK(m.atoms[0].weight == doctest::Approx(0.75));

  std::vector<Atom> bad{{e1, -1e-6}};
  CHECK_THROWS_AS(make_measure(MeasureKind::sphere, 2, bad, true), domain_error);
  std::vector<Atom> ok_window{{e1, -5e-11}};
  CHECK(make_measure(MeasureKind::sphere, 2, ok_window, true).atoms.empty());
  CHECK_THROWS_AS(make_measure(MeasureKind::sphere, 2, {{v2(0.5, 0), 1.0}}, true),
                  domain_error);  // not a unit vector
}
