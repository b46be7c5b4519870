#include "verify/selftest.hpp"

#include <cmath>
#include <functional>
#include <sstream>

#include "core/area_measures.hpp"
#include "core/support_analysis.hpp"
#include "core/tolerances.hpp"
#include "fn/ma.hpp"
#include "fn/pl_function.hpp"
#include "ig/integral_geometry.hpp"
#include "ig/sampler.hpp"

namespace mv::verify {

namespace {

struct failure {
  std::string what;
};

void expect(bool cond, const std::string& what) {
  if (!cond) throw failure{what};
}

void expect_near(double got, double want, double tol, const std::string& what) {
  if (!(std::abs(got - want) <= tol)) {
    std::ostringstream os;
    os << what << ": got " << got << ", expected " << want;
    throw failure{os.str()};
  }
}

Vec v1(double x) {
  Vec v(1);
  v << x;
  return v;
}
Vec v2(double x, double y) {
  Vec v(2);
  v << x, y;
  return v;
}
Vec v3(double x, double y, double z) {
  Vec v(3);
  v << x, y, z;
  return v;
}

bool poly_eq(const geom::Polytope& p, const geom::Polytope& q, double tol) {
  if (p.ambient != q.ambient || p.vertices.size() != q.vertices.size()) return false;
  std::vector<char> used(q.vertices.size(), 0);
  for (const auto& v : p.vertices) {
    bool hit = false;
    for (size_t j = 0; j < q.vertices.size(); ++j) {
      if (!used[j] && approx_eq(v, q.vertices[j], tol)) {
        used[j] = 1;
        hit = true;
        break;
      }
    }
    if (!hit) return false;
  }
  return true;
}

double grid_gap_1d(const fn::PLConvexFunction& f, const fn::PLConvexFunction& g,
                   double lo, double hi, int steps) {
  double worst = 0.0;
  for (int i = 0; i <= steps; ++i) {
    double x = lo + (hi - lo) * i / steps;
    double a = fn::evaluate(f, v1(x));
    double b = fn::evaluate(g, v1(x));
    if (std::isinf(a) && std::isinf(b)) continue;
    worst = std::max(worst, std::abs(a - b));
  }
  return worst;
}

fn::PLConvexFunction abs_fn() {
  return fn::make_pl_function(1, {{v1(1), 0.0}, {v1(-1), 0.0}});
}

fn::PLConvexFunction linf2() {
  return fn::make_pl_function(
      2, {{v2(1, 0), 0.0}, {v2(-1, 0), 0.0}, {v2(0, 1), 0.0}, {v2(0, -1), 0.0}});
}

// Fixed full-dimensional test body in R^3 with an off-lattice apex.
geom::Polytope probe3() {
  return geom::make_polytope(
      3, {v3(0, 0, 0), v3(1, 0, 0), v3(0, 1, 0), v3(0, 0, 1), v3(0.4, 0.5, 0.8)});
}

int count_faces(const geom::FaceLattice& l, int dim) {
  int c = 0;
  for (const auto& f : l.faces)
    if (f.dim == dim) ++c;
  return c;
}

int count_cones(const geom::NormalFan& fan, int dim) {
  int c = 0;
  for (const auto& k : fan.cones)
    if (k.dim == dim) ++c;
  return c;
}

struct Entry {
  const char* id;
  std::function<void()> body;
};

const std::vector<Entry>& registry() {
  static const std::vector<Entry> cases = {
      {"hull-drops-interior-points",
       [] {
         geom::Polytope p =
             geom::make_polytope(2, {v2(0, 0), v2(1, 0), v2(0, 1), v2(0.2, 0.2)});
         expect(p.vertices.size() == 3, "triangle with an interior point kept " +
                                            std::to_string(p.vertices.size()) + " vertices");
       }},
      {"hull-single-point",
       [] {
         geom::Polytope p = geom::make_polytope(3, {v3(0, 0, 0)});
         expect(p.vertices.size() == 1 && geom::intrinsic_dim(p) == 0,
                "a lone point must be a 0-dimensional body");
       }},
      {"minkowski-square-doubling",
       [] {
         geom::Polytope sum = geom::minkowski_sum(geom::unit_cube(2), geom::unit_cube(2));
         expect(poly_eq(sum, geom::scale(geom::unit_cube(2), 2.0), 1e-12),
                "[0,1]^2 + [0,1]^2 must be [0,2]^2");
       }},
      {"minkowski-neutral-point",
       [] {
         geom::Polytope tri = geom::make_polytope(2, {v2(0, 0), v2(1, 0), v2(0, 1)});
         geom::Polytope o = geom::make_polytope(2, {v2(0, 0)});
         expect(poly_eq(geom::minkowski_sum(tri, o), tri, 1e-12),
                "adding the origin changed the body");
       }},
      {"volume-unit-cube",
       [] { expect_near(geom::volume(geom::unit_cube(3)), 1.0, 1e-12, "vol [0,1]^3"); }},
      {"volume-corner-simplex",
       [] {
         expect_near(geom::volume(geom::standard_simplex(3)), 1.0 / 6.0, 1e-12,
                     "vol conv{o,e1,e2,e3}");
       }},
      {"project-cube-to-square",
       [] {
         geom::Polytope sq =
             geom::project(geom::unit_cube(3), geom::horizontal_hyperplane(3));
         expect(poly_eq(sq, geom::unit_cube(2), 1e-12), "cube shadow is not the unit square");
       }},
      {"project-segment-to-line",
       [] {
         Mat f(2, 1);
         f << 1, 0;
         geom::Polytope s = geom::project(geom::segment(v2(0, 0), v2(1, 0)),
                                          geom::make_subspace(2, f));
         expect(poly_eq(s, geom::segment(v1(0), v1(1)), 1e-12),
                "segment shadow is not [0,1]");
       }},
      {"support-value-cube",
       [] {
         fn::PLConvexFunction h = fn::support_fn(geom::unit_cube(2));
         expect_near(fn::evaluate(h, v2(1, 2)), 3.0, 1e-12, "h_{[0,1]^2}(1,2)");
         expect_near(fn::evaluate(h, v2(-1, 2)), 2.0, 1e-12, "h_{[0,1]^2}(-1,2)");
       }},
      {"support-value-segment",
       [] {
         fn::PLConvexFunction h = fn::support_fn(geom::segment(v2(0, 0), v2(1, 0)));
         expect_near(fn::evaluate(h, v2(2, -3)), 2.0, 1e-12, "h_{[o,e1]}(2,-3)");
       }},
      {"ball-approx-square",
       [] {
         geom::BallApprox b = geom::ball_approx(2, 1);
         geom::Polytope diamond =
             geom::make_polytope(2, {v2(1, 0), v2(-1, 0), v2(0, 1), v2(0, -1)});
         expect(poly_eq(b.body, diamond, 1e-12), "refinement-1 approximant is not the diamond");
         expect_near(b.delta, 1.0 - std::cos(std::acos(-1.0) / 4.0), 1e-12, "declared gap");
       }},
      {"face-lattice-square",
       [] {
         geom::FaceLattice l = geom::face_lattice(geom::unit_cube(2));
         expect(count_faces(l, 0) == 4 && count_faces(l, 1) == 4 && count_faces(l, 2) == 1,
                "face counts of the square are off");
         expect(l.facet_normals.size() == 4, "square must expose 4 edge normals");
         for (const auto& n : l.facet_normals)
           expect(std::abs(std::abs(n[0]) + std::abs(n[1]) - 1.0) <= 1e-12 &&
                      std::min(std::abs(n[0]), std::abs(n[1])) <= 1e-12,
                  "square edge normals must be +-e1, +-e2");
       }},
      {"face-lattice-segment-carrying",
       [] {
         geom::FaceLattice l = geom::face_lattice(geom::segment(v2(0, 0), v2(1, 0)));
         expect(l.carrying_normals.size() == 2, "a segment in the plane has 2 carrying normals");
         for (const auto& n : l.carrying_normals)
           expect(std::abs(n[0]) <= 1e-12 && std::abs(std::abs(n[1]) - 1.0) <= 1e-12,
                  "carrying normals of [o,e1] must be +-e2");
       }},
      {"face-lattice-cube-f-vector",
       [] {
         geom::FaceLattice l = geom::face_lattice(geom::unit_cube(3));
         expect(count_faces(l, 0) == 8 && count_faces(l, 1) == 12 && count_faces(l, 2) == 6,
                "cube f-vector is not (8,12,6)");
       }},
      {"surface-measure-square",
       [] {
         meas::DiscreteMeasure s = meas::surface_area_measure(geom::unit_cube(2));
         expect(s.atoms.size() == 4, "square edge measure needs 4 atoms");
         for (const auto& a : s.atoms)
           expect(std::abs(a.weight - 1.0) <= 1e-12, "square edge lengths must all be 1");
       }},
      {"surface-measure-segment",
       [] {
         meas::DiscreteMeasure s =
             meas::surface_area_measure(geom::segment(v2(0, 0), v2(1, 0)));
         expect(s.atoms.size() == 2, "segment measure needs both carrying normals");
         for (const auto& a : s.atoms)
           expect(std::abs(a.weight - 1.0) <= 1e-12 && std::abs(a.loc[0]) <= 1e-12,
                  "segment atoms must be +-e2 with weight 1");
       }},
      {"mixed-area-diagonal",
       [] {
         geom::Polytope p = probe3();
         expect(meas::measures_close(meas::mixed_area_measure({p, p}),
                                     meas::surface_area_measure(p), 1e-9, 1e-9),
                "diagonal mixed area measure differs from the surface measure");
       }},
      {"mixed-area-triangle-edges",
       [] {
         geom::Polytope tri = geom::make_polytope(2, {v2(0, 0), v2(1, 0), v2(0.3, 0.9)});
         meas::DiscreteMeasure s = meas::surface_area_measure(tri);
         expect(s.atoms.size() == 3, "triangle edge measure needs 3 atoms");
         double per = 0.0;
         for (const auto& a : s.atoms) per += a.weight;
         double want = (v2(1, 0) - v2(0, 0)).norm() + (v2(0.3, 0.9) - v2(1, 0)).norm() +
                       (v2(0, 0) - v2(0.3, 0.9)).norm();
         expect_near(per, want, 1e-12, "edge lengths must sum to the perimeter");
       }},
      {"mixed-volume-diagonal",
       [] {
         geom::Polytope p = probe3();
         expect_near(meas::mixed_volume({p, p, p}), geom::volume(p), 1e-10,
                     "V(P,P,P) vs vol P");
       }},
      {"mixed-volume-symmetry",
       [] {
         geom::Polytope a = probe3();
         geom::Polytope b = geom::unit_cube(3);
         geom::Polytope c = geom::standard_simplex(3);
         double v1_ = meas::mixed_volume({a, b, c});
         double v2_ = meas::mixed_volume({c, a, b});
         double v3_ = meas::mixed_volume({b, c, a});
         expect(std::abs(v1_ - v2_) <= 1e-10 && std::abs(v2_ - v3_) <= 1e-10,
                "mixed volume changed under permutation");
       }},
      {"intrinsic-first-of-segment",
       [] {
         meas::IntrinsicEstimate e =
             meas::intrinsic_volume(geom::segment(v2(0, 0), v2(1.7, 0)), 1, 3);
         expect_near(e.value, 1.7, 1e-9, "first intrinsic volume of a length-1.7 segment");
       }},
      {"intrinsic-euler",
       [] {
         geom::Polytope tri = geom::make_polytope(2, {v2(0, 0), v2(1, 0), v2(0, 1)});
         expect_near(meas::intrinsic_volume(tri, 0, 2).value, 1.0, 1e-12,
                     "0th intrinsic volume");
       }},
      {"area-measure-top-exact",
       [] {
         geom::Polytope p = probe3();
         meas::AreaMeasureEstimate e = meas::area_measure_j(p, 2, 2);
         expect(e.delta == 0.0, "top-index area measure must declare zero approximant gap");
         expect(meas::measures_close(e.measure, meas::surface_area_measure(p), 1e-12, 1e-12),
                "top-index area measure differs from the surface measure");
       }},
      {"fan-square-cones",
       [] {
         geom::NormalFan fan = geom::normal_fan(geom::unit_cube(2));
         expect(count_cones(fan, 1) == 4 && count_cones(fan, 2) == 4,
                "square fan needs 4 ray cones and 4 quadrant cones");
       }},
      {"fan-cube-cones",
       [] {
         geom::NormalFan fan = geom::normal_fan(geom::unit_cube(3));
         expect(count_cones(fan, 1) == 6 && count_cones(fan, 2) == 12 &&
                    count_cones(fan, 3) == 8,
                "cube fan needs 6+12+8 cones");
       }},
      {"touching-cone-cube-facet",
       [] {
         geom::TouchingCone t = geom::touching_cone(geom::unit_cube(3), v3(1, 0, 0));
         expect(t.dim == 1 && t.rays.size() == 1 && approx_eq(t.rays[0], v3(1, 0, 0), 1e-12),
                "touching cone at e1 must be the single ray pos{e1}");
       }},
      {"r-extreme-cube-facet-normal",
       [] {
         expect(geom::is_r_extreme(geom::unit_cube(3), v3(1, 0, 0), 0),
                "facet normals must be 0-extreme");
       }},
      {"r-extreme-top-index",
       [] {
         expect(geom::is_r_extreme(geom::unit_cube(3), v3(1, 1, 1).normalized(), 2),
                "every direction is (n-1)-extreme");
       }},
      {"projection-route-top-slot",
       [] {
         geom::Polytope cube = geom::unit_cube(3);
         for (const Vec& z : {v3(1, 0, 0), v3(1, 1, 1).normalized(), v3(1, 1, 0).normalized()})
           expect(geom::support_membership_via_projections(cube, z, 2) ==
                      geom::is_r_extreme(cube, z, 0),
                  "top-slot membership must match 0-extremality");
       }},
      {"nesting-equal-indices",
       [] {
         expect(geom::nesting_check(probe3(), 2, 2).pass, "nesting at j == k must pass");
       }},
      {"eval-abs-max-form",
       [] { expect_near(fn::evaluate(abs_fn(), v1(3)), 3.0, 1e-12, "|3|"); }},
      {"eval-indicator-outside",
       [] {
         expect(std::isinf(fn::evaluate(fn::indicator(geom::unit_cube(1)), v1(2))),
                "indicator must be +infinity outside its domain");
       }},
      {"legendre-abs",
       [] {
         fn::PLConvexFunction c = fn::legendre(abs_fn());
         expect(c.domain.has_value() &&
                    poly_eq(*c.domain, geom::segment(v1(-1), v1(1)), 1e-12),
                "conjugate of |x| must be supported on [-1,1]");
         expect(grid_gap_1d(c, fn::indicator(geom::segment(v1(-1), v1(1))), -1, 1, 16) <= 1e-12,
                "conjugate of |x| must vanish on [-1,1]");
       }},
      {"infconv-neutral-element",
       [] {
         fn::PLConvexFunction u =
             fn::make_pl_function(1, {{v1(1), 0.25}, {v1(-0.5), 0.0}});
         fn::PLConvexFunction io = fn::indicator(geom::make_polytope(1, {v1(0)}));
         expect(grid_gap_1d(fn::inf_convolution(u, io), u, -3, 3, 24) <= 1e-9,
                "u box I_o must reproduce u");
       }},
      {"epi-scale-indicator",
       [] {
         fn::PLConvexFunction g = fn::epi_scale(2.0, fn::indicator(geom::unit_cube(1)));
         expect(g.domain.has_value() &&
                    poly_eq(*g.domain, geom::segment(v1(0), v1(2)), 1e-12),
                "2 . I_[0,1] must be I_[0,2]");
         expect(grid_gap_1d(g, fn::indicator(geom::segment(v1(0), v1(2))), 0, 2, 16) <= 1e-12,
                "scaled indicator must vanish on [0,2]");
       }},
      {"restrict-cube-support",
       [] {
         fn::PLConvexFunction r =
             fn::restrict_fn(fn::support_fn(geom::unit_cube(3)), geom::horizontal_hyperplane(3));
         fn::PLConvexFunction want = fn::support_fn(geom::unit_cube(2));
         double worst = 0.0;
         for (int i = -4; i <= 4; ++i)
           for (int j = -4; j <= 4; ++j) {
             Vec x = v2(i / 2.0, j / 2.0);
             worst = std::max(worst, std::abs(fn::evaluate(r, x) - fn::evaluate(want, x)));
           }
         expect(worst <= 1e-12, "restricting h_cube to the horizontal plane is h_square");
       }},
      {"restrict-identity-full-space",
       [] {
         fn::PLConvexFunction v =
             fn::make_pl_function(2, {{v2(1, 0.5), 0.1}, {v2(-1, 0.25), 0.0}, {v2(0, -1), 0.3}});
         geom::Subspace full = geom::make_subspace(2, Mat::Identity(2, 2));
         fn::PLConvexFunction r = fn::restrict_fn(v, full);
         double worst = 0.0;
         for (int i = -4; i <= 4; ++i)
           for (int j = -4; j <= 4; ++j) {
             Vec x = v2(i / 2.0, j / 2.0);
             worst = std::max(worst, std::abs(fn::evaluate(r, x) - fn::evaluate(v, x)));
           }
         expect(worst <= 1e-12, "restricting to the full space must be the identity");
       }},
      {"project-indicator-square",
       [] {
         Mat f(2, 1);
         f << 1, 0;
         fn::PLConvexFunction p =
             fn::project_fn(fn::indicator(geom::unit_cube(2)), geom::make_subspace(2, f));
         expect(p.domain.has_value() && poly_eq(*p.domain, geom::segment(v1(0), v1(1)), 1e-9),
                "shadow of I_[0,1]^2 must be I_[0,1]");
         expect(grid_gap_1d(p, fn::indicator(geom::unit_cube(1)), 0, 1, 16) <= 1e-9,
                "shadow indicator must vanish on [0,1]");
       }},
      {"subdiff-abs-origin",
       [] {
         geom::Polytope d = fn::subdifferential(abs_fn(), v1(0));
         expect(poly_eq(d, geom::segment(v1(-1), v1(1)), 1e-12),
                "subdifferential of |x| at 0 must be [-1,1]");
       }},
      {"ma-abs-two-delta",
       [] {
         meas::DiscreteMeasure m = fn::ma_measure(abs_fn());
         expect(m.atoms.size() == 1 && m.atoms[0].loc.norm() <= 1e-12 &&
                    std::abs(m.atoms[0].weight - 2.0) <= 1e-12,
                "MA(|x|) must be 2 delta_0");
       }},
      {"mixed-ma-diagonal",
       [] {
         fn::PLConvexFunction v = linf2();
         expect(meas::measures_close(fn::mixed_ma({v, v}), fn::ma_measure(v), 1e-9, 1e-9),
                "diagonal mixed measure differs from the plain measure");
       }},
      {"haar-rotation-orthogonal",
       [] {
         ig::Sampler s(11, 0);
         Mat r = ig::sample_rotation(4, s);
         expect((r.transpose() * r - Mat::Identity(4, 4)).lpNorm<Eigen::Infinity>() <= 1e-12 &&
                    std::abs(r.determinant() - 1.0) <= 1e-12,
                "sampled rotation is not special orthogonal");
       }},
      {"grassmann-full-space",
       [] {
         ig::Sampler s(12, 0);
         geom::Subspace e = ig::sample_grassmann(3, 3, s);
         expect(e.frame.cols() == 3 &&
                    (e.frame.transpose() * e.frame - Mat::Identity(3, 3))
                            .lpNorm<Eigen::Infinity>() <= 1e-12,
                "full-rank frame must span the whole space");
       }},
      {"through-line-k1",
       [] {
         ig::Sampler s(13, 0);
         geom::Subspace e = ig::sample_grassmann_through_line(1, 3, s);
         expect(e.frame.cols() == 1 && std::abs(std::abs(e.frame(2, 0)) - 1.0) <= 1e-12 &&
                    std::abs(e.frame(0, 0)) <= 1e-12 && std::abs(e.frame(1, 0)) <= 1e-12,
                "1-dimensional through-line subspace must be the vertical line");
       }},
      {"through-line-contains-vertical",
       [] {
         ig::Sampler s(14, 0);
         Vec e4 = Vec::Zero(4);
         e4[3] = 1;
         for (int i = 0; i < 8; ++i) {
           geom::Subspace e = ig::sample_grassmann_through_line(2, 4, s);
           expect((e.pull(e.push(e4)) - e4).norm() <= 1e-12,
                  "through-line subspace lost the vertical direction");
         }
       }},
      {"kubota-top-slot-exact",
       [] {
         geom::Polytope cube = geom::unit_cube(3);
         auto one = [](const Vec&) { return 1.0; };
         ig::MCEstimate est = ig::kubota_bodies(one, {cube, cube}, 8, 5, 1);
         expect(est.stderr_ == 0.0, "the fully-specified slot case must be exact");
         expect_near(est.mean, 6.0, 1e-12, "surface area of the unit cube");
       }},
      {"functional-top-slot-routing",
       [] {
         ig::MCEstimate est = ig::functional_intrinsic_volume(
             linf2(), 2, [](double) { return 1.0; }, 10.0, 32, 5, 1);
         expect(est.stderr_ == 0.0, "the atom-sum case must report zero spread");
         expect_near(est.mean, 2.0, 1e-12, "full-index functional volume of the sup-norm");
       }},
      {"segment-average-zero-psi",
       [] {
         ig::MCEstimate est = ig::sphere_segment_average(
             [](const geom::Polytope&) { return 0.0; }, 2, 64, 9, 1);
         expect(est.mean == 0.0 && est.stderr_ == 0.0, "zero evaluator must average to zero");
       }},
      {"nesting-ma-affine-empty",
       [] {
         fn::PLConvexFunction aff = fn::make_pl_function(2, {{v2(0.7, -0.3), 0.2}});
         VerificationReport rep = ig::support_nesting_ma(aff, 1, 2, {});
         expect(rep.pass && rep.witnesses_checked >= 1,
                "affine functions have empty supports at every index");
       }},
  };
  return cases;
}

}  // namespace

std::vector<SelftestCase> run_selftest() {
  std::vector<SelftestCase> out;
  for (const auto& e : registry()) {
    SelftestCase c;
    c.id = e.id;
    try {
      e.body();
      c.pass = true;
    } catch (const failure& f) {
      c.pass = false;
      c.detail = f.what;
    } catch (const std::exception& ex) {
      c.pass = false;
      c.detail = std::string("raised: ") + ex.what();
    }
    out.push_back(std::move(c));
  }
  return out;
}

}  // namespace mv::verify
