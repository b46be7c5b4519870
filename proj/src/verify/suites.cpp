#include "verify/suites.hpp"

#include <cmath>
#include <sstream>

#include "core/area_measures.hpp"
#include "core/cone_selector.hpp"
#include "core/support_analysis.hpp"
#include "core/tolerances.hpp"
#include "core/version.hpp"
#include "fn/complex.hpp"
#include "fn/ma.hpp"
#include "fn/pl_function.hpp"
#include "ig/integral_geometry.hpp"
#include "io/json_io.hpp"

namespace mv::verify {

namespace {

// ---------------------------------------------------------------------------
// Deterministic corpus generators (counter-based sampler, one stream per
// suite, so every suite replays bit-identically from its seed).

Vec rand_vec(ig::Sampler& s, int n, double lo, double hi) {
  Vec v(n);
  for (int i = 0; i < n; ++i) v[i] = lo + (hi - lo) * s.uniform();
  return v;
}

fn::PLConvexFunction random_finite(ig::Sampler& s, int n, int k) {
  std::vector<fn::Piece> ps;
  for (int i = 0; i < k; ++i)
    ps.push_back({rand_vec(s, n, -2.0, 2.0), 2.0 * s.uniform() - 1.0});
  return fn::make_pl_function(n, std::move(ps));
}

geom::Polytope random_domain(ig::Sampler& s, int n) {
  std::vector<Vec> pts;
  for (int i = 0; i < 2 * n + 4; ++i) pts.push_back(rand_vec(s, n, -1.5, 1.5));
  for (int i = 0; i < n; ++i) {
    Vec e = Vec::Zero(n);
    e[i] = 0.6;
    pts.push_back(e);
    pts.push_back(-e);
  }
  return geom::make_polytope(n, pts);
}

fn::PLConvexFunction random_compact(ig::Sampler& s, int n, int k) {
  std::vector<fn::Piece> ps;
  for (int i = 0; i < k; ++i)
    ps.push_back({rand_vec(s, n, -2.0, 2.0), 2.0 * s.uniform() - 1.0});
  return fn::make_pl_function(n, std::move(ps), random_domain(s, n));
}

geom::Polytope random_polytope(ig::Sampler& s, int n, int pts) {
  while (true) {
    std::vector<Vec> v;
    for (int i = 0; i < pts; ++i) v.push_back(rand_vec(s, n, -1.0, 1.0));
    geom::Polytope p = geom::make_polytope(n, v);
    if (geom::intrinsic_dim(p) == n) return p;
  }
}

fn::PLConvexFunction linf_fn(int n) {
  std::vector<fn::Piece> ps;
  for (int i = 0; i < n; ++i) {
    Vec e = Vec::Zero(n);
    e[i] = 1;
    ps.push_back({e, 0.0});
    ps.push_back({-e, 0.0});
  }
  return fn::make_pl_function(n, std::move(ps));
}

// ---------------------------------------------------------------------------
// Small shared helpers.

std::string describe(const io::ojson& j) { return io::dump(j); }

std::string num(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

std::string vec_str(const Vec& v) {
  std::string out = "(";
  for (Eigen::Index i = 0; i < v.size(); ++i) {
    if (i) out += ", ";
    out += num(v[i]);
  }
  return out + ")";
}

meas::DiscreteMeasure scale_measure(const meas::DiscreteMeasure& m, double factor) {
  std::vector<meas::Atom> atoms;
  meas::accumulate(atoms, m, factor);
  return meas::make_measure(m.kind, m.ambient, std::move(atoms), false);
}

meas::DiscreteMeasure embed_measure(const meas::DiscreteMeasure& m, const geom::Subspace& e,
                                    double factor) {
  std::vector<meas::Atom> atoms;
  for (const auto& a : m.atoms) atoms.push_back({e.pull(a.loc), factor * a.weight});
  return meas::make_measure(m.kind, e.ambient, std::move(atoms), false);
}

double factorial(int n) {
  double f = 1.0;
  for (int i = 2; i <= n; ++i) f *= i;
  return f;
}

io::ojson inputs_json(std::uint64_t seed, long long samples, int threads, double tol) {
  io::ojson j;
  j["version"] = MIXEDVOL_VERSION;
  j["seed"] = seed;
  if (samples > 0) j["samples"] = samples;
  j["threads"] = threads;
  j["tol"] = tol;
  j["eps_geom"] = tol::geom();
  return j;
}

// ---------------------------------------------------------------------------
// Suite 1: double Legendre transform returns the original function.

VerificationReport suite_legendre(const SuiteOptions& opt) {
  const std::uint64_t seed = opt.seed.value_or(2026);
  const long long count = opt.samples.value_or(50);
  const double tol = opt.tol.value_or(1e-9);

  VerificationReport rep;
  rep.theorem = "legendre-involution";
  rep.inputs = describe(inputs_json(seed, count, opt.threads, tol));

  ig::Sampler s(seed, 1);
  for (long long i = 0; i < count; ++i) {
    int n = static_cast<int>(i % 3) + 1;
    int k = 2 + static_cast<int>(i % 11);  // 2..12 pieces
    fn::PLConvexFunction v = random_finite(s, n, k);
    fn::PLConvexFunction w = fn::legendre(fn::legendre(v));
    double worst = 0.0;
    for (int g = 0; g < 1000; ++g) {
      Vec x = rand_vec(s, n, -3.0, 3.0);
      worst = std::max(worst, std::abs(fn::evaluate(v, x) - fn::evaluate(w, x)));
    }
    rep.note_witness();
    if (!(worst <= tol))
      rep.violate("grid gap " + num(worst) + " on " + describe(io::to_json(v)));
  }
  return rep;
}

// ---------------------------------------------------------------------------
// Suite 2: the two Monge-Ampere routes agree atomwise, and the total mass is
// the volume of the conjugate's domain.

VerificationReport suite_ma_dual_route(const SuiteOptions& opt) {
  const std::uint64_t seed = opt.seed.value_or(2026);  // same corpus as suite 1
  const long long count = opt.samples.value_or(50);
  const double loc_tol = opt.tol.value_or(1e-9);

  VerificationReport rep;
  rep.theorem = "ma-dual-route";
  rep.inputs = describe(inputs_json(seed, count, opt.threads, loc_tol));

  ig::Sampler s(seed, 1);
  for (long long i = 0; i < count; ++i) {
    int n = static_cast<int>(i % 3) + 1;
    int k = 2 + static_cast<int>(i % 11);
    fn::PLConvexFunction v = random_finite(s, n, k);
    for (int g = 0; g < 1000; ++g) rand_vec(s, n, -3.0, 3.0);  // keep corpus aligned

    meas::DiscreteMeasure lifted = fn::ma_route_lifted(v);
    meas::DiscreteMeasure cells = fn::ma_route_cells(v);
    double worst = 0.0;
    rep.note_witness();
    if (!meas::measures_close(lifted, cells, loc_tol, 1e-8, &worst)) {
      rep.violate("route mismatch " + num(worst) + " on " + describe(io::to_json(v)));
      continue;
    }
    double mass = meas::total_mass(lifted);
    double dom_vol = geom::volume(*fn::legendre(v).domain);
    if (!(std::abs(mass - dom_vol) <= 1e-9))
      rep.violate("mass " + num(mass) + " vs conjugate-domain volume " + num(dom_vol) +
                  " on " + describe(io::to_json(v)));
  }
  return rep;
}

// ---------------------------------------------------------------------------
// Suite 3: mixed volumes agree between the polarization route and the
// surface-integral route; segment cross-polytopes hit 1/n! exactly.

VerificationReport suite_mixed_volume(const SuiteOptions& opt) {
  const std::uint64_t seed = opt.seed.value_or(3033);
  const long long count = opt.samples.value_or(100);
  const double tol = opt.tol.value_or(1e-8);

  VerificationReport rep;
  rep.theorem = "mixed-volume-cross-check";
  rep.inputs = describe(inputs_json(seed, count, opt.threads, tol));

  ig::Sampler s(seed, 1);
  for (long long i = 0; i < count; ++i) {
    std::vector<geom::Polytope> bodies;
    for (int b = 0; b < 3; ++b) bodies.push_back(random_polytope(s, 3, 6 + static_cast<int>(i % 5)));
    rep.note_witness();
    try {
      double va = meas::mixed_volume(bodies);
      fn::PLConvexFunction h = fn::support_fn(bodies[0]);
      meas::DiscreteMeasure sm = meas::mixed_area_measure({bodies[1], bodies[2]});
      double vb =
          meas::integrate(sm, [&](const Vec& u) { return fn::evaluate(h, u); }) / 3.0;
      if (!(std::abs(va - vb) <= tol * std::max({1.0, std::abs(va), std::abs(vb)})))
        rep.violate("route gap " + num(va - vb) + " on triple with first body " +
                    describe(io::to_json(bodies[0])));
    } catch (const verification_error& e) {
      rep.violate(std::string("internal cross-check tripped: ") + e.what());
    }
  }

  for (int n = 2; n <= 4; ++n) {
    std::vector<geom::Polytope> segs;
    for (int i = 0; i < n; ++i) {
      Vec e = Vec::Zero(n);
      e[i] = 1;
      segs.push_back(geom::segment(Vec::Zero(n), e));
    }
    double v = meas::mixed_volume(segs);
    rep.note_witness();
    if (!(std::abs(v - 1.0 / factorial(n)) <= 1e-12))
      rep.violate("V([o,e_1],...,[o,e_n]) = " + num(v) + " for n=" + std::to_string(n));
  }
  return rep;
}

// ---------------------------------------------------------------------------
// Suite 4: the mixed Monge-Ampere measure of support functions is a single
// atom at the origin carrying the mixed volume.

VerificationReport suite_ma_bodies(const SuiteOptions& opt) {
  const std::uint64_t seed = opt.seed.value_or(4044);
  const long long count = opt.samples.value_or(50);
  const double tol = opt.tol.value_or(1e-8);

  VerificationReport rep;
  rep.theorem = "ma-bodies";
  rep.inputs = describe(inputs_json(seed, count, opt.threads, tol));

  ig::Sampler s(seed, 1);
  for (long long i = 0; i < count; ++i) {
    int n = 2 + static_cast<int>(i % 2);
    std::vector<geom::Polytope> bodies;
    std::vector<fn::PLConvexFunction> hs;
    for (int b = 0; b < n; ++b) {
      bodies.push_back(random_polytope(s, n, n + 4));
      hs.push_back(fn::support_fn(bodies.back()));
    }
    double v = meas::mixed_volume(bodies);
    meas::DiscreteMeasure m = fn::mixed_ma(hs);
    rep.note_witness();
    if (m.atoms.size() != 1) {
      rep.violate(std::to_string(m.atoms.size()) + " atoms instead of 1, first body " +
                  describe(io::to_json(bodies[0])));
      continue;
    }
    if (!(m.atoms[0].loc.norm() <= tol) ||
        !(std::abs(m.atoms[0].weight - v) <= tol * std::max(1.0, std::abs(v))))
      rep.violate("atom at |x|=" + num(m.atoms[0].loc.norm()) + " weight " +
                  num(m.atoms[0].weight) + " vs mixed volume " + num(v));
  }
  return rep;
}

// ---------------------------------------------------------------------------
// Suite 5: the gnomonic pushforward of epigraph-boundary measures equals the
// conjugate mixed Monge-Ampere measure.

VerificationReport suite_gnomonic(const SuiteOptions& opt) {
  // Default seed chosen so every drawn instance has a well-conditioned normal
  // fan; some draws produce near-parallel facet creases on which atom-level
  // comparisons are meaningless (the library then refuses with domain_error).
  const std::uint64_t seed = opt.seed.value_or(5056);
  const long long count = opt.samples.value_or(20);
  const double tol = opt.tol.value_or(1e-8);

  VerificationReport rep;
  rep.theorem = "gnomonic-identity";
  rep.inputs = describe(inputs_json(seed, count, opt.threads, tol));

  ig::Sampler s(seed, 1);
  for (long long i = 0; i < count; ++i) {
    int n = static_cast<int>(i % 3) + 1;
    int k = 3 + static_cast<int>(i % 3);
    fn::PLConvexFunction u = random_compact(s, n, k);
    rep.note_witness();
    double worst = 0.0;
    if (i % 2 == 0 || n == 1) {
      std::vector<fn::PLConvexFunction> us(static_cast<size_t>(n), u);
      fn::GnomonicResult g = fn::gnomonic_transfer(fn::epigraph_body(u));
      if (!meas::measures_close(g.measure, fn::conj_ma(us), tol, tol, &worst))
        rep.violate("single-body gap " + num(worst) + " on " + describe(io::to_json(u)));
    } else {
      std::vector<fn::PLConvexFunction> us{u, random_compact(s, n, 3)};
      for (int p = static_cast<int>(us.size()); p < n; ++p)
        us.push_back(random_compact(s, n, 3));
      std::vector<geom::Polytope> bodies;
      for (const auto& f : us) bodies.push_back(fn::epigraph_body(f));
      fn::GnomonicResult g = fn::gnomonic_transfer_measure(meas::mixed_area_measure(bodies));
      if (!meas::measures_close(g.measure, fn::conj_ma(us), tol, tol, &worst))
        rep.violate("mixed gap " + num(worst) + " on " + describe(io::to_json(u)));
    }
  }
  return rep;
}

// ---------------------------------------------------------------------------
// Suite 6: sampled body estimates against polygonal-disk baselines.

VerificationReport suite_kubota_bodies(const SuiteOptions& opt) {
  const std::uint64_t seed = opt.seed.value_or(7);
  const long long nsamp = opt.samples.value_or(20000);
  const int threads = opt.threads;

  VerificationReport rep;
  rep.theorem = "kubota-bodies";
  rep.inputs = describe(inputs_json(seed, nsamp, threads, 0.0));

  Vec w(3);
  w << 0.2, -0.3, 0.4;
  std::vector<std::pair<std::string, std::function<double(const Vec&)>>> fs;
  fs.emplace_back("1", [](const Vec&) { return 1.0; });
  fs.emplace_back("(1+<u,w>)^2", [w](const Vec& u) {
    double t = 1.0 + u.dot(w);
    return t * t;
  });
  const double sup_f2 = (1.0 + w.norm()) * (1.0 + w.norm());

  ig::Sampler s(seed, 99);
  Vec e3 = Vec::Zero(3);
  e3[2] = 1;
  std::vector<std::pair<std::string, geom::Polytope>> bodies;
  bodies.emplace_back("unit cube", geom::unit_cube(3));
  bodies.emplace_back("random simplex", random_polytope(s, 3, 4));
  bodies.emplace_back("vertical segment", geom::segment(Vec::Zero(3), e3));

  // Baseline slot: 128-gon inscribed in the horizontal unit disk.
  geom::BallApprox gon = geom::ball_approx(2, 32);
  std::vector<Vec> flat;
  for (const auto& v : gon.body.vertices) {
    Vec p = Vec::Zero(3);
    p[0] = v[0];
    p[1] = v[1];
    flat.push_back(p);
  }
  geom::Polytope disk = geom::make_polytope(3, flat);
  // Inradius gap of the m-gon: sec(pi/m) - 1. The disk-to-polygon swap moves
  // mass-type integrals by at most that fraction of 3 V(K,B,B), and V(K,B,B)
  // is bounded by the cube [-1,1]^3 replacing each ball slot.
  const double eps_gon = gon.delta / (1.0 - gon.delta);
  geom::Polytope c2 = geom::translate(geom::scale(geom::unit_cube(3), 2.0),
                                      Vec(-Vec::Ones(3)));

  for (const auto& [body_name, k] : bodies) {
    meas::DiscreteMeasure base_measure = meas::mixed_area_measure({k, disk});
    double vkbb = meas::mixed_volume({k, c2, c2});
    for (const auto& [f_name, f] : fs) {
      rep.note_witness();
      ig::MCEstimate est = ig::kubota_bodies(f, {k}, nsamp, seed, threads);
      double base = meas::integrate(base_measure, f);
      double sup_f = f_name == "1" ? 1.0 : sup_f2;
      double declared = sup_f * eps_gon * 3.0 * vkbb;
      double gap = std::abs(est.mean - base);
      if (!(gap <= 3.0 * est.stderr_ + declared))
        rep.violate(body_name + ", f=" + f_name + ": |" + num(est.mean) + " - " +
                    num(base) + "| > 3*" + num(est.stderr_) + " + " + num(declared));

      // Zero-variance route: both slots filled by bodies, no sampling left.
      rep.note_witness();
      ig::MCEstimate exact = ig::kubota_bodies(f, {k, k}, 64, seed, threads);
      double target = meas::integrate(meas::mixed_area_measure({k, k}), f);
      if (!(exact.stderr_ <= 1e-12) ||
          !(std::abs(exact.mean - target) <= 1e-12 * std::max(1.0, std::abs(target))))
        rep.violate(body_name + ", f=" + f_name + ": exact route " + num(exact.mean) +
                    " vs " + num(target) + ", stderr " + num(exact.stderr_));
    }
  }
  return rep;
}

// ---------------------------------------------------------------------------
// Suite 7: functional intrinsic volumes of the cube support function.

VerificationReport suite_kubota_functions(const SuiteOptions& opt) {
  const std::uint64_t seed = opt.seed.value_or(7);
  const long long nsamp = opt.samples.value_or(10000);
  const int threads = opt.threads;

  VerificationReport rep;
  rep.theorem = "kubota-functions";
  rep.inputs = describe(inputs_json(seed, nsamp, threads, 0.0));

  fn::PLConvexFunction v = fn::support_fn(geom::unit_cube(3));
  auto alpha = [](double) { return 1.0; };
  const double radius = 16.0;

  for (int j = 1; j <= 2; ++j) {
    rep.note_witness();
    ig::MCEstimate est = ig::functional_intrinsic_volume(v, j, alpha, radius, nsamp, seed, threads);
    double target = meas::binomial(3, j);
    if (!(std::abs(est.mean - target) <= 3.0 * est.stderr_))
      rep.violate("j=" + std::to_string(j) + ": " + num(est.mean) + " vs " + num(target) +
                  " with stderr " + num(est.stderr_));
  }

  rep.note_witness();
  ig::MCEstimate z0 = ig::functional_intrinsic_volume(v, 0, alpha, radius, nsamp, seed, threads);
  if (!(z0.mean == 1.0 && z0.stderr_ == 0.0))
    rep.violate("j=0 returned " + num(z0.mean) + " stderr " + num(z0.stderr_) +
                " instead of alpha(0) exactly");

  rep.note_witness();
  ig::MCEstimate z3 = ig::functional_intrinsic_volume(v, 3, alpha, radius, nsamp, seed, threads);
  if (!(z3.stderr_ == 0.0 && std::abs(z3.mean - 1.0) <= 1e-12))
    rep.violate("j=3 atom sum returned " + num(z3.mean) + " stderr " + num(z3.stderr_));
  return rep;
}

// ---------------------------------------------------------------------------
// Suite 8: restriction identities along random frames, primal and dual forms.

VerificationReport suite_restriction(const SuiteOptions& opt) {
  const std::uint64_t seed = opt.seed.value_or(8088);
  const long long count = opt.samples.value_or(20);
  const double tol = opt.tol.value_or(1e-8);

  VerificationReport rep;
  rep.theorem = "restriction-identities";
  rep.inputs = describe(inputs_json(seed, count, opt.threads, tol));

  ig::Sampler s(seed, 1);
  for (long long i = 0; i < count; ++i) {
    int n = 2 + static_cast<int>(i % 2);
    int j = 1 + static_cast<int>((i / 2) % (n - 1));
    Mat rot = ig::sample_rotation(n, s);
    geom::Subspace e = geom::make_subspace(n, rot.leftCols(j));
    double nfact = factorial(n), jfact = factorial(j);

    // Primal: conjugate measures with segment-indicator slots vs projections.
    std::vector<fn::PLConvexFunction> us;
    for (int p = 0; p < j; ++p) us.push_back(random_compact(s, n, 3));
    std::vector<fn::PLConvexFunction> lhs_args = us;
    for (int p = j; p < n; ++p)
      lhs_args.push_back(fn::indicator(geom::segment(Vec::Zero(n), Vec(rot.col(p)))));
    meas::DiscreteMeasure lhs = scale_measure(fn::conj_ma(lhs_args), nfact);
    std::vector<fn::PLConvexFunction> proj;
    for (const auto& u : us) proj.push_back(fn::project_fn(u, e));
    meas::DiscreteMeasure rhs = embed_measure(fn::conj_ma(proj), e, jfact);
    double worst = 0.0;
    rep.note_witness();
    if (!meas::measures_close(lhs, rhs, tol, tol, &worst))
      rep.violate("primal gap " + num(worst) + " at n=" + std::to_string(n) +
                  " j=" + std::to_string(j) + " on " + describe(io::to_json(us[0])));

    // Dual: mixed measures with segment support-function slots vs restrictions.
    std::vector<fn::PLConvexFunction> vs;
    for (int p = 0; p < j; ++p) vs.push_back(random_finite(s, n, 4));
    std::vector<fn::PLConvexFunction> dual_args = vs;
    for (int p = j; p < n; ++p)
      dual_args.push_back(fn::support_fn(geom::segment(Vec::Zero(n), Vec(rot.col(p)))));
    meas::DiscreteMeasure dl = scale_measure(fn::mixed_ma(dual_args), nfact);
    std::vector<fn::PLConvexFunction> restr;
    for (const auto& v : vs) restr.push_back(fn::restrict_fn(v, e));
    meas::DiscreteMeasure dr = embed_measure(fn::mixed_ma(restr), e, jfact);
    rep.note_witness();
    if (!meas::measures_close(dl, dr, tol, tol, &worst))
      rep.violate("dual gap " + num(worst) + " at n=" + std::to_string(n) +
                  " j=" + std::to_string(j) + " on " + describe(io::to_json(vs[0])));
  }
  return rep;
}

// ---------------------------------------------------------------------------
// Suite 9: support membership routes agree and nest on polytope fans.

VerificationReport suite_nesting_bodies(const SuiteOptions& opt) {
  const std::uint64_t seed = opt.seed.value_or(9099);
  const long long count = opt.samples.value_or(20);

  VerificationReport rep;
  rep.theorem = "nesting-bodies";
  rep.inputs = describe(inputs_json(seed, count, opt.threads, 0.0));

  ig::Sampler s(seed, 1);
  for (long long i = 0; i < count; ++i) {
    // 3:2 split between ambient dimensions 3 and 4.
    int n = (i % 5 < 3) ? 3 : 4;
    geom::Polytope p = random_polytope(s, n, n + 4 + static_cast<int>(i % 3));
    geom::NormalFan fan = geom::normal_fan(p);
    std::vector<Vec> dirs;
    for (const auto& c : fan.cones) dirs.push_back(c.representative);
    Vec pole = Vec::Zero(n);
    pole[n - 1] = 1;
    dirs.push_back(pole);
    dirs.push_back(-pole);

    for (const auto& z : dirs) {
      std::vector<bool> member(static_cast<size_t>(n), false);
      for (int j = 1; j <= n - 1; ++j) {
        bool direct = geom::is_mixed_extreme_ball(p, z, j);
        bool projected = geom::support_membership_via_projections(p, z, j);
        member[static_cast<size_t>(j)] = direct;
        rep.note_witness();
        if (direct != projected)
          rep.violate("route disagreement at j=" + std::to_string(j) + ", z=" + vec_str(z) +
                      " on " + describe(io::to_json(p)));
      }
      for (int k = 1; k <= n - 1; ++k)
        for (int j = 1; j <= k; ++j) {
          rep.note_witness();
          if (member[static_cast<size_t>(k)] && !member[static_cast<size_t>(j)])
            rep.violate("nesting broken: member at k=" + std::to_string(k) +
                        " but not j=" + std::to_string(j) + " on " + describe(io::to_json(p)));
        }
    }
  }
  return rep;
}

// ---------------------------------------------------------------------------
// Suite 10: surface measures of selector caps equal n times the mixed value
// with flat slots, and origin-plus-sphere selectors kill lower coefficients.

VerificationReport suite_steiner_bridge(const SuiteOptions& opt) {
  const std::uint64_t seed = opt.seed.value_or(1010);
  const long long count = opt.samples.value_or(10);
  const double tol = opt.tol.value_or(1e-8);

  VerificationReport rep;
  rep.theorem = "steiner-ma-bridge";
  rep.inputs = describe(inputs_json(seed, count, opt.threads, tol));

  ig::Sampler s(seed, 1);
  for (long long i = 0; i < count; ++i) {
    int n = 2 + static_cast<int>(i % 2);
    geom::Polytope p = random_polytope(s, n, n + 6);
    meas::DiscreteMeasure sm = meas::surface_area_measure(p);
    for (size_t t = 0; t < std::min<size_t>(3, sm.atoms.size()); ++t) {
      const Vec& target = sm.atoms[t].loc;
      meas::ConeSelector cap = meas::cap_selector(target, 0.25);
      double lhs = 0.0;
      for (const auto& a : sm.atoms)
        if (meas::selector_admits_direction(cap, a.loc)) lhs += a.weight;
      std::vector<geom::Polytope> slots(static_cast<size_t>(n - 1), p);
      double rhs = n * meas::mixed_ma_bodies_q(slots, cap);
      rep.note_witness();
      if (!(std::abs(lhs - rhs) <= tol * std::max(1.0, std::abs(lhs))))
        rep.violate("cap gap " + num(lhs - rhs) + " at facet normal " + std::to_string(t) +
                    " on " + describe(io::to_json(p)));
    }

    meas::ConeSelector osphere = meas::origin_sphere_selector(n);
    for (int k = 1; k <= n - 1; ++k) {
      std::vector<geom::Polytope> slots;
      for (int b = 0; b < k; ++b) slots.push_back(random_polytope(s, n, n + 5));
      double coeff = meas::mixed_ma_bodies_q(slots, osphere);
      rep.note_witness();
      if (!(std::abs(coeff) <= tol))
        rep.violate("origin-plus-sphere coefficient " + num(coeff) + " at k=" +
                    std::to_string(k) + " n=" + std::to_string(n));
    }
  }
  return rep;
}

// ---------------------------------------------------------------------------
// Suite 11: support nesting for mixed Monge-Ampere measures of functions.

VerificationReport suite_support_nesting_ma(const SuiteOptions& opt) {
  const std::uint64_t seed = opt.seed.value_or(1111);

  VerificationReport rep;
  rep.theorem = "support-nesting-ma";
  rep.inputs = describe(inputs_json(seed, 0, opt.threads, 0.0));

  ig::Sampler s(seed, 1);
  auto absorb = [&](const fn::PLConvexFunction& v, const std::string& name,
                    const std::vector<Vec>& extras) {
    int n = v.ambient;
    for (int k = 1; k <= n; ++k)
      for (int j = 1; j <= k; ++j) {
        VerificationReport sub = ig::support_nesting_ma(v, j, k, extras);
        rep.witnesses_checked += sub.witnesses_checked;
        if (!sub.pass)
          for (const auto& viol : sub.violations)
            rep.violate(name + " (j=" + std::to_string(j) + ",k=" + std::to_string(k) +
                        "): " + viol);
      }
  };

  for (int n = 2; n <= 3; ++n) {
    absorb(linf_fn(n), "sup-norm n=" + std::to_string(n), {});
    std::vector<fn::Piece> one{{rand_vec(s, n, -2.0, 2.0), 2.0 * s.uniform() - 1.0}};
    absorb(fn::make_pl_function(n, one), "affine n=" + std::to_string(n), {});
    for (int t = 0; t < 3; ++t) {
      fn::PLConvexFunction v = random_finite(s, n, 6);
      std::vector<Vec> extras;
      for (int e = 0; e < 5; ++e) extras.push_back(rand_vec(s, n, -1.5, 1.5));
      absorb(v, "random n=" + std::to_string(n) + " #" + std::to_string(t), extras);
    }
  }
  return rep;
}

}  // namespace

const std::vector<SuiteInfo>& suites() {
  static const std::vector<SuiteInfo> list = {
      {"legendre-involution", "double conjugation reproduces finite functions", 10.0},
      {"ma-dual-route", "Monge-Ampere routes agree atomwise; mass = conjugate-domain volume", 0.0},
      {"mixed-volume-cross-check", "volume polarization vs surface-integral route", 0.0},
      {"ma-bodies", "mixed measure of support functions is the mixed volume at the origin", 0.0},
      {"gnomonic-identity", "gnomonic pushforward equals the conjugate mixed measure", 30.0},
      {"kubota-bodies", "sampled body integrals vs polygonal-disk baselines", 0.0},
      {"kubota-functions", "functional intrinsic volumes of the cube support function", 60.0},
      {"restriction-identities", "dimension-reduction identities along random frames", 0.0},
      {"nesting-bodies", "membership route agreement and nesting on polytope fans", 0.0},
      {"steiner-ma-bridge", "cap surface measures vs local parallel-volume coefficients", 0.0},
      {"support-nesting-ma", "support nesting across slot counts for functions", 0.0},
  };
  return list;
}

bool is_suite(const std::string& id) {
  for (const auto& s : suites())
    if (s.id == id) return true;
  return false;
}

VerificationReport run_suite(const std::string& id, const SuiteOptions& opt) {
  if (!is_suite(id)) throw parse_error("unknown suite \"" + id + "\"");
  if (id == "legendre-involution") return suite_legendre(opt);
  if (id == "ma-dual-route") return suite_ma_dual_route(opt);
  if (id == "mixed-volume-cross-check") return suite_mixed_volume(opt);
  if (id == "ma-bodies") return suite_ma_bodies(opt);
  if (id == "gnomonic-identity") return suite_gnomonic(opt);
  if (id == "kubota-bodies") return suite_kubota_bodies(opt);
  if (id == "kubota-functions") return suite_kubota_functions(opt);
  if (id == "restriction-identities") return suite_restriction(opt);
  if (id == "nesting-bodies") return suite_nesting_bodies(opt);
  if (id == "steiner-ma-bridge") return suite_steiner_bridge(opt);
  return suite_support_nesting_ma(opt);
}

}  // namespace mv::verify
