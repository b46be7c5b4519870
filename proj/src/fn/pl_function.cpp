#include "fn/pl_function.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "core/hrep.hpp"
#include "core/simplex_lp.hpp"
#include "core/tolerances.hpp"
#include "fn/complex.hpp"
#include "fn/lifted.hpp"

namespace mv::fn {

namespace {

constexpr double kTol = 1e-9;

bool piece_less(const Piece& p, const Piece& q) {
  if (approx_eq(p.a, q.a, 0.0)) return p.b < q.b;
  return lex_less(p.a, q.a);
}

// Identical slopes: only the smallest offset can ever win the max.
std::vector<Piece> dedupe_slopes(std::vector<Piece> pieces) {
  std::sort(pieces.begin(), pieces.end(), piece_less);
  std::vector<Piece> out;
  for (auto& p : pieces) {
    if (!out.empty() && approx_eq(out.back().a, p.a, kTol)) continue;
    out.push_back(std::move(p));
  }
  return out;
}

// Pieces surviving as strict maximizers somewhere inside the domain, decided
// in the domain's own chart so lower-dimensional domains prune correctly.
std::vector<Piece> prune_on_domain(std::vector<Piece> pieces, const geom::Polytope& dom) {
  geom::LocalHRep lh = geom::local_hrep(dom);
  const int d = lh.hull.dim();
  const int m = static_cast<int>(pieces.size());
  std::vector<Vec> la(m);
  std::vector<double> lb(m);
  for (int i = 0; i < m; ++i) {
    la[static_cast<size_t>(i)] = lh.hull.basis.transpose() * pieces[static_cast<size_t>(i)].a;
    lb[static_cast<size_t>(i)] =
        pieces[static_cast<size_t>(i)].b - pieces[static_cast<size_t>(i)].a.dot(lh.hull.base);
  }

  // Pieces that agree on the domain are interchangeable; keep the first.
  std::vector<int> ids;
  for (int i = 0; i < m; ++i) {
    bool dup = false;
    for (int j : ids)
      if (approx_eq(la[static_cast<size_t>(i)], la[static_cast<size_t>(j)], kTol) &&
          std::abs(lb[static_cast<size_t>(i)] - lb[static_cast<size_t>(j)]) <= kTol)
        dup = true;
    if (!dup) ids.push_back(i);
  }

  if (d == 0) {
    int best = ids[0];
    for (int i : ids)
      if (lb[static_cast<size_t>(i)] < lb[static_cast<size_t>(best)] - kTol) best = i;
    return {pieces[static_cast<size_t>(best)]};
  }

  std::vector<Piece> out;
  for (int i : ids) {
    const int rows = static_cast<int>(lh.a.rows()) + static_cast<int>(ids.size());
    Mat a(rows, d + 1);
    Vec c(rows);
    a.setZero();
    a.block(0, 0, lh.a.rows(), d) = lh.a;
    c.head(lh.a.rows()) = lh.c;
    int r = static_cast<int>(lh.a.rows());
    for (int j : ids) {
      if (j == i) continue;
      a.block(r, 0, 1, d) = (la[static_cast<size_t>(j)] - la[static_cast<size_t>(i)]).transpose();
      a(r, d) = 1.0;
      c[r++] = lb[static_cast<size_t>(j)] - lb[static_cast<size_t>(i)];
    }
    a(r, d) = 1.0;
    c[r] = 1.0;
    Vec obj = Vec::Zero(d + 1);
    obj[d] = 1.0;
    lp::LPResult res = lp::lp_max(a, c, obj);
    if (res.status == lp::LPStatus::optimal && res.value > kTol)
      out.push_back(pieces[static_cast<size_t>(i)]);
  }
  return out;
}

}  // namespace

PLConvexFunction make_pl_function(int ambient, std::vector<Piece> pieces,
                                  std::optional<geom::Polytope> domain) {
  if (ambient < 0) throw domain_error("negative ambient dimension");
  if (pieces.empty())
    throw domain_error("a piecewise-linear function needs at least one piece");
  for (const auto& p : pieces)
    if (static_cast<int>(p.a.size()) != ambient || !p.a.allFinite() || !std::isfinite(p.b))
      throw domain_error("piece dimensions do not match the ambient space");
  if (domain) {
    if (domain->ambient != ambient)
      throw domain_error("domain dimension does not match the ambient space");
    if (domain->vertices.empty()) throw domain_error("empty domain");
  }

  PLConvexFunction f;
  f.ambient = ambient;
  f.domain = std::move(domain);

  if (!f.domain) {
    pieces = dedupe_slopes(std::move(pieces));
    if (pieces.size() > 1) {
      LiftedLower ll = lifted_lower_hull(pieces, ambient);
      std::vector<Piece> kept;
      for (int id : ll.vertex_ids) kept.push_back(pieces[static_cast<size_t>(id)]);
      pieces = std::move(kept);
    }
  } else {
    pieces = prune_on_domain(std::move(pieces), *f.domain);
  }
  std::sort(pieces.begin(), pieces.end(), piece_less);
  f.pieces = std::move(pieces);
  return f;
}

PLConvexFunction indicator(const geom::Polytope& k) {
  std::vector<Piece> pieces(1);
  pieces[0].a = Vec::Zero(k.ambient);
  pieces[0].b = 0.0;
  return make_pl_function(k.ambient, std::move(pieces), k);
}

PLConvexFunction support_fn(const geom::Polytope& k) {
  std::vector<Piece> pieces;
  pieces.reserve(k.vertices.size());
  for (const auto& v : k.vertices) pieces.push_back(Piece{v, 0.0});
  return make_pl_function(k.ambient, std::move(pieces));
}

double evaluate(const PLConvexFunction& f, const Vec& x) {
  if (f.domain && !geom::contains(*f.domain, x))
    return std::numeric_limits<double>::infinity();
  double best = -std::numeric_limits<double>::infinity();
  for (const auto& p : f.pieces) best = std::max(best, p.a.dot(x) - p.b);
  return best;
}

PLConvexFunction legendre(const PLConvexFunction& f) {
  const int n = f.ambient;
  if (f.finite()) {
    LiftedLower ll = lifted_lower_hull(f.pieces, n);
    std::vector<Piece> pieces;
    pieces.reserve(ll.facets.size());
    for (const auto& fc : ll.facets)
      pieces.push_back(Piece{facet_ambient_slope(ll, fc), facet_ambient_offset(ll, fc)});
    std::vector<Vec> slopes;
    slopes.reserve(f.pieces.size());
    for (const auto& p : f.pieces) slopes.push_back(p.a);
    return make_pl_function(n, std::move(pieces), geom::make_polytope(n, slopes));
  }
  Complex cx = complex_of(f);
  std::vector<Piece> pieces;
  pieces.reserve(cx.vertices.size());
  for (const auto& p : cx.vertices) pieces.push_back(Piece{p, evaluate(f, p)});
  return make_pl_function(n, std::move(pieces));
}

PLConvexFunction sum_pl(const PLConvexFunction& f, const PLConvexFunction& g) {
  if (f.ambient != g.ambient) throw domain_error("summands live in different spaces");
  if (f.pieces.size() * g.pieces.size() > 100000)
    throw domain_error("piece budget exceeded (100000)");
  std::vector<Piece> pieces;
  pieces.reserve(f.pieces.size() * g.pieces.size());
  for (const auto& p : f.pieces)
    for (const auto& q : g.pieces) pieces.push_back(Piece{p.a + q.a, p.b + q.b});

  std::optional<geom::Polytope> domain;
  if (f.domain && g.domain) {
    Mat a1, a2;
    Vec c1, c2;
    geom::ambient_hrep(*f.domain, a1, c1);
    geom::ambient_hrep(*g.domain, a2, c2);
    Mat a(a1.rows() + a2.rows(), f.ambient);
    Vec c(a1.rows() + a2.rows());
    a << a1, a2;
    c << c1, c2;
    geom::HRepVertices meet = geom::hrep_vertices(a, c);
    if (!meet.feasible || meet.vertices.empty())
      throw domain_error("empty domain intersection");
    domain = geom::make_polytope(f.ambient, meet.vertices);
  } else if (f.domain) {
    domain = *f.domain;
  } else if (g.domain) {
    domain = *g.domain;
  }
  return make_pl_function(f.ambient, std::move(pieces), std::move(domain));
}

PLConvexFunction epi_scale(double lambda, const PLConvexFunction& f) {
  if (lambda < 0.0) throw domain_error("epigraph scaling needs a nonnegative factor");
  const int n = f.ambient;
  if (lambda == 0.0) {
    std::vector<Vec> origin{Vec::Zero(n)};
    std::vector<Piece> pieces(1);
    pieces[0].a = Vec::Zero(n);
    pieces[0].b = 0.0;
    return make_pl_function(n, std::move(pieces), geom::make_polytope(n, origin));
  }
  std::vector<Piece> pieces = f.pieces;
  for (auto& p : pieces) p.b *= lambda;
  std::optional<geom::Polytope> domain;
  if (f.domain) domain = geom::scale(*f.domain, lambda);
  return make_pl_function(n, std::move(pieces), std::move(domain));
}

PLConvexFunction inf_convolution(const PLConvexFunction& f, const PLConvexFunction& g) {
  return legendre(sum_pl(legendre(f), legendre(g)));
}

PLConvexFunction restrict_fn(const PLConvexFunction& f, const geom::Subspace& e) {
  if (e.ambient != f.ambient)
    throw domain_error("subspace ambient dimension does not match the function");
  const int j = e.dim();
  std::vector<Piece> pieces;
  pieces.reserve(f.pieces.size());
  for (const auto& p : f.pieces) pieces.push_back(Piece{e.push(p.a), p.b});

  std::optional<geom::Polytope> domain;
  if (f.domain) {
    Mat a;
    Vec c;
    geom::ambient_hrep(*f.domain, a, c);
    Mat al = a * e.frame;
    geom::HRepVertices meet = geom::hrep_vertices(al, c);
    if (!meet.feasible || meet.vertices.empty())
      throw domain_error("the subspace misses the domain");
    domain = geom::make_polytope(j, meet.vertices);
  }
  return make_pl_function(j, std::move(pieces), std::move(domain));
}

PLConvexFunction project_fn(const PLConvexFunction& f, const geom::Subspace& e) {
  return legendre(restrict_fn(legendre(f), e));
}

geom::Polytope subdifferential(const PLConvexFunction& f, const Vec& x) {
  const int n = f.ambient;
  if (f.domain) {
    geom::LocalHRep lh = geom::local_hrep(*f.domain);
    if (lh.hull.dim() < n)
      throw domain_error("subdifferential is unbounded for a lower-dimensional domain");
    Vec y = lh.hull.to_local(x);
    Vec slack = lh.c - lh.a * y;
    if (slack.minCoeff() <= kTol)
      throw domain_error("subdifferential needs a domain-interior point");
  }
  double value = evaluate(f, x);
  double eps = kTol * std::max(1.0, std::abs(value));
  std::vector<Vec> active;
  for (const auto& p : f.pieces)
    if (p.a.dot(x) - p.b >= value - eps) active.push_back(p.a);
  return geom::make_polytope(n, active);
}

}  // namespace mv::fn
