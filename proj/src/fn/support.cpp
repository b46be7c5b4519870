#include "fn/support.hpp"

#include <algorithm>
#include <cmath>

#include "core/tolerances.hpp"
#include "fn/lifted.hpp"

namespace mv::fn {

namespace {
constexpr double kTol = 1e-9;
}

Mat crease_span(const PLConvexFunction& v, const Vec& x) {
  if (!v.finite()) throw domain_error("crease analysis needs a finite function");
  const int n = v.ambient;
  double value = evaluate(v, x);
  double eps = kTol * std::max(1.0, std::abs(value));
  std::vector<Vec> active;
  for (const auto& p : v.pieces)
    if (p.a.dot(x) - p.b >= value - eps) active.push_back(p.a);
  std::vector<Vec> diffs;
  for (size_t i = 1; i < active.size(); ++i) diffs.push_back(active[i] - active[0]);
  return span_basis(diffs, n);
}

bool ma_support_member(const PLConvexFunction& v, const Vec& x, int j) {
  const int n = v.ambient;
  if (j < 1 || j > n) throw domain_error("slot count must lie between 1 and n");
  Mat w = crease_span(v, x);
  if (w.cols() < j) return false;
  if (x.norm() <= kTol) return true;
  return (w.transpose() * x).norm() > kTol;
}

bool ma_support_member_witness(const PLConvexFunction& v, const Vec& x, int j) {
  const int n = v.ambient;
  if (j < 1 || j > n) throw domain_error("slot count must lie between 1 and n");
  Mat w = crease_span(v, x);

  std::vector<Vec> cols;
  if (x.norm() <= kTol) {
    for (int i = 0; i < w.cols() && static_cast<int>(cols.size()) < j; ++i)
      cols.push_back(w.col(i));
  } else {
    Vec xh = x / x.norm();
    cols.push_back(xh);
    Mat u;
    Vec wx = w.transpose() * x;
    if (wx.norm() <= kTol) {
      u = w;
    } else if (w.cols() > 0) {
      Mat wcol(w.cols(), 1);
      wcol.col(0) = wx / wx.norm();
      u = w * orth_complement(wcol, static_cast<int>(w.cols()));
    } else {
      u = Mat::Zero(n, 0);
    }
    for (int i = 0; i < u.cols() && static_cast<int>(cols.size()) < j; ++i)
      cols.push_back(u.col(i));
  }
  if (static_cast<int>(cols.size()) < j) {
    Mat partial(n, static_cast<int>(cols.size()));
    for (size_t i = 0; i < cols.size(); ++i) partial.col(static_cast<int>(i)) = cols[i];
    Mat pad = orth_complement(partial, n);
    for (int i = 0; i < pad.cols() && static_cast<int>(cols.size()) < j; ++i)
      cols.push_back(pad.col(i));
  }

  Mat frame(n, j);
  for (int i = 0; i < j; ++i) frame.col(i) = cols[static_cast<size_t>(i)];
  Eigen::HouseholderQR<Mat> qr(frame);
  Mat q = qr.householderQ() * Mat::Identity(n, j);
  geom::Subspace e = geom::make_subspace(n, q);

  PLConvexFunction ve = restrict_fn(v, e);
  Mat we = crease_span(ve, e.push(x));
  return we.cols() == j;
}

std::vector<Vec> complex_points(const PLConvexFunction& v) {
  if (!v.finite()) throw domain_error("crease analysis needs a finite function");
  const int n = v.ambient;
  LiftedLower ll = lifted_lower_hull(v.pieces, n);
  std::vector<Vec> out;
  for (const auto& face : lower_face_piece_sets(ll)) {
    std::optional<Vec> rep = face_representative(v.pieces, n, face);
    if (!rep) continue;
    bool dup = false;
    for (const auto& p : out)
      if (approx_eq(p, *rep, kTol)) dup = true;
    if (!dup) out.push_back(std::move(*rep));
  }
  return out;
}

}  // namespace mv::fn
