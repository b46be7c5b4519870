#include "fn/complex.hpp"

#include <cmath>

#include "core/hrep.hpp"
#include "core/tolerances.hpp"

namespace mv::fn {

namespace {
constexpr double kTol = 1e-9;

void push_unique(std::vector<Vec>& vs, const Vec& v) {
  for (const auto& w : vs)
    if (approx_eq(w, v, kTol)) return;
  vs.push_back(v);
}
}  // namespace

Complex complex_of(const PLConvexFunction& f) {
  if (f.finite())
    throw domain_error("cell complex construction needs a compact domain");
  Complex out;
  out.ambient = f.ambient;
  geom::LocalHRep dom = geom::local_hrep(*f.domain);
  out.chart = dom.hull;
  const int d = dom.hull.dim();
  const int m = static_cast<int>(f.pieces.size());

  if (d == 0) {
    ComplexCell cell;
    cell.piece = 0;
    cell.body = *f.domain;
    cell.gradient = f.pieces[0].a;
    out.cells.push_back(std::move(cell));
    out.vertices = f.domain->vertices;
    return out;
  }

  // Pieces in domain-local coordinates.
  std::vector<Vec> la(m);
  std::vector<double> lb(m);
  for (int i = 0; i < m; ++i) {
    la[i] = dom.hull.basis.transpose() * f.pieces[static_cast<size_t>(i)].a;
    lb[i] = f.pieces[static_cast<size_t>(i)].b -
            f.pieces[static_cast<size_t>(i)].a.dot(dom.hull.base);
  }

  double cell_vol = 0.0;
  for (int i = 0; i < m; ++i) {
    Mat a(dom.a.rows() + m - 1, d);
    Vec c(dom.a.rows() + m - 1);
    a.topRows(dom.a.rows()) = dom.a;
    c.head(dom.a.rows()) = dom.c;
    int r = static_cast<int>(dom.a.rows());
    for (int j = 0; j < m; ++j) {
      if (j == i) continue;
      a.row(r) = (la[j] - la[i]).transpose();
      c[r++] = lb[j] - lb[i];
    }
    geom::HRepVertices cell = geom::hrep_vertices(a, c);
    if (!cell.feasible || cell.vertices.empty()) continue;
    std::vector<Vec> amb;
    amb.reserve(cell.vertices.size());
    for (const auto& y : cell.vertices) amb.push_back(dom.hull.to_ambient(y));
    geom::Polytope body = geom::make_polytope(f.ambient, amb);
    if (geom::intrinsic_dim(body) < d) continue;
    cell_vol += geom::relative_volume(body.vertices);
    for (const auto& v : body.vertices) push_unique(out.vertices, v);
    ComplexCell cc;
    cc.piece = i;
    cc.body = std::move(body);
    cc.gradient = f.pieces[static_cast<size_t>(i)].a;
    out.cells.push_back(std::move(cc));
  }

  double dom_vol = geom::relative_volume(f.domain->vertices);
  if (std::abs(cell_vol - dom_vol) > 1e-9 * std::max(1.0, dom_vol))
    throw verification_error("cell complex does not tile the domain");
  return out;
}

}  // namespace mv::fn
