#include "fn/ma.hpp"

#include <algorithm>
#include <cmath>

#include "core/tolerances.hpp"
#include "fn/complex.hpp"
#include "fn/lifted.hpp"

namespace mv::fn {

namespace {

constexpr double kTol = 1e-9;

void require_finite(const PLConvexFunction& v, const char* what) {
  if (!v.finite()) throw domain_error(std::string(what) + " needs finite functions");
}

// Lifted lower-hull route: every lower facet is one 0-cell of the linearity
// complex; its subdifferential is the convex hull of the facet's slopes.
meas::DiscreteMeasure ma_primary(const PLConvexFunction& v) {
  const int n = v.ambient;
  std::vector<Vec> slopes;
  slopes.reserve(v.pieces.size());
  for (const auto& p : v.pieces) slopes.push_back(p.a);
  if (affine_hull(slopes).dim() < n)
    return meas::make_measure(meas::MeasureKind::point, n, {}, true);

  LiftedLower ll = lifted_lower_hull(v.pieces, n);
  std::vector<meas::Atom> atoms;
  for (const auto& fc : ll.facets) {
    std::vector<Vec> grads;
    grads.reserve(fc.piece_ids.size());
    for (int id : fc.piece_ids) grads.push_back(v.pieces[static_cast<size_t>(id)].a);
    meas::Atom a;
    a.loc = facet_ambient_slope(ll, fc);
    a.weight = geom::volume(geom::make_polytope(n, grads));
    atoms.push_back(std::move(a));
  }
  return meas::make_measure(meas::MeasureKind::point, n, std::move(atoms), true);
}

// Independent route: solve every (n+1)-piece tie system, keep globally active
// solutions as 0-cells, weight by subdifferential volume.
meas::DiscreteMeasure ma_oracle(const PLConvexFunction& v) {
  const int n = v.ambient;
  const int m = static_cast<int>(v.pieces.size());
  std::vector<Vec> cells;
  if (m >= n + 1) {
    std::vector<int> idx(static_cast<size_t>(n + 1));
    for (int i = 0; i <= n; ++i) idx[static_cast<size_t>(i)] = i;
    while (true) {
      Mat a(n, n);
      Vec rhs(n);
      for (int r = 0; r < n; ++r) {
        a.row(r) = (v.pieces[static_cast<size_t>(idx[static_cast<size_t>(r + 1)])].a -
                    v.pieces[static_cast<size_t>(idx[0])].a)
                       .transpose();
        rhs[r] = v.pieces[static_cast<size_t>(idx[static_cast<size_t>(r + 1)])].b -
                 v.pieces[static_cast<size_t>(idx[0])].b;
      }
      Eigen::FullPivLU<Mat> lu(a);
      if (lu.rank() == n) {
        Vec x = lu.solve(rhs);
        if ((a * x - rhs).lpNorm<Eigen::Infinity>() <= 1e-7 * std::max(1.0, rhs.norm())) {
          double val = evaluate(v, x);
          double tie = v.pieces[static_cast<size_t>(idx[0])].a.dot(x) -
                       v.pieces[static_cast<size_t>(idx[0])].b;
          if (val - tie <= 1e-8 * std::max(1.0, std::abs(val))) {
            bool dup = false;
            for (const auto& c : cells)
              if (approx_eq(c, x, kTol)) dup = true;
            if (!dup) cells.push_back(std::move(x));
          }
        }
      }
      int pos = n;
      while (pos >= 0 && idx[static_cast<size_t>(pos)] == m - (n + 1) + pos) --pos;
      if (pos < 0) break;
      ++idx[static_cast<size_t>(pos)];
      for (int q = pos + 1; q <= n; ++q)
        idx[static_cast<size_t>(q)] = idx[static_cast<size_t>(q - 1)] + 1;
    }
  }
  std::vector<meas::Atom> atoms;
  for (const auto& x : cells) {
    meas::Atom a;
    a.loc = x;
    a.weight = geom::volume(subdifferential(v, x));
    atoms.push_back(std::move(a));
  }
  return meas::make_measure(meas::MeasureKind::point, n, std::move(atoms), true);
}

double factorial(int n) {
  double f = 1.0;
  for (int i = 2; i <= n; ++i) f *= i;
  return f;
}

meas::DiscreteMeasure mixed_ma_primary(const std::vector<PLConvexFunction>& vs) {
  const int n = static_cast<int>(vs.size());
  for (const auto& v : vs) {
    require_finite(v, "the mixed Monge-Ampere measure");
    if (v.ambient != n)
      throw domain_error("the mixed Monge-Ampere measure needs n functions on R^n");
  }
  std::vector<meas::Atom> acc;
  for (int mask = 1; mask < (1 << n); ++mask) {
    PLConvexFunction s;
    bool first = true;
    for (int i = 0; i < n; ++i) {
      if (!(mask & (1 << i))) continue;
      s = first ? vs[static_cast<size_t>(i)] : sum_pl(s, vs[static_cast<size_t>(i)]);
      first = false;
    }
    int bits = 0;
    for (int i = 0; i < n; ++i)
      if (mask & (1 << i)) ++bits;
    double sign = ((n - bits) % 2 == 0) ? 1.0 : -1.0;
    meas::accumulate(acc, ma_primary(s), sign / factorial(n));
  }
  return meas::make_measure(meas::MeasureKind::point, n, std::move(acc), true);
}

}  // namespace

meas::DiscreteMeasure ma_measure(const PLConvexFunction& v) {
  require_finite(v, "the Monge-Ampere measure");
  meas::DiscreteMeasure primary = ma_primary(v);
  meas::DiscreteMeasure check = ma_oracle(v);
  double worst = 0.0;
  if (!meas::measures_close(primary, check, 1e-8, 1e-8, &worst))
    throw verification_error("oracle disagreement");
  return primary;
}

meas::DiscreteMeasure ma_route_lifted(const PLConvexFunction& v) {
  require_finite(v, "the Monge-Ampere measure");
  return ma_primary(v);
}

meas::DiscreteMeasure ma_route_cells(const PLConvexFunction& v) {
  require_finite(v, "the Monge-Ampere measure");
  return ma_oracle(v);
}

meas::DiscreteMeasure mixed_ma(const std::vector<PLConvexFunction>& vs) {
  return mixed_ma_primary(vs);
}

meas::DiscreteMeasure conj_ma(const std::vector<PLConvexFunction>& us) {
  std::vector<PLConvexFunction> conj;
  conj.reserve(us.size());
  for (const auto& u : us) {
    if (u.finite())
      throw domain_error("non-coercive input detected (conjugate has unbounded pieces)");
    conj.push_back(legendre(u));
  }
  return mixed_ma_primary(conj);
}

geom::Polytope epigraph_body(const PLConvexFunction& u) {
  if (u.finite()) throw domain_error("the epigraph body needs a compact domain");
  const int n = u.ambient;
  Complex cx = complex_of(u);
  auto raw = [&](const Vec& p) {
    double best = u.pieces[0].a.dot(p) - u.pieces[0].b;
    for (const auto& pc : u.pieces) best = std::max(best, pc.a.dot(p) - pc.b);
    return best;
  };
  double top = raw(cx.vertices.at(0));
  for (const auto& p : cx.vertices) top = std::max(top, raw(p));
  std::vector<Vec> pts;
  pts.reserve(2 * cx.vertices.size());
  for (const auto& p : cx.vertices) {
    Vec lo(n + 1), hi(n + 1);
    lo.head(n) = p;
    lo[n] = raw(p);
    hi.head(n) = p;
    hi[n] = top;
    pts.push_back(std::move(lo));
    pts.push_back(std::move(hi));
  }
  return geom::make_polytope(n + 1, pts);
}

GnomonicResult gnomonic_transfer_measure(const meas::DiscreteMeasure& s) {
  if (s.kind != meas::MeasureKind::sphere)
    throw domain_error("gnomonic transfer expects a sphere measure");
  const int n = s.ambient - 1;
  if (n < 1) throw domain_error("gnomonic transfer needs ambient dimension >= 2");
  GnomonicResult out;
  std::vector<meas::Atom> atoms;
  for (const auto& a : s.atoms) {
    double c = a.loc[n];
    if (c < -kTol) {
      meas::Atom t;
      t.loc = a.loc.head(n) / (-c);
      t.weight = (-c) * a.weight;
      atoms.push_back(std::move(t));
    } else if (c <= kTol) {
      ++out.equator_atoms;
      out.equator_mass += a.weight;
    }
  }
  out.measure = meas::make_measure(meas::MeasureKind::point, n, std::move(atoms), true);
  return out;
}

GnomonicResult gnomonic_transfer(const geom::Polytope& p) {
  return gnomonic_transfer_measure(meas::surface_area_measure(p));
}

}  // namespace mv::fn
