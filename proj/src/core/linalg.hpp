#pragma once

#include <Eigen/Dense>
#include <algorithm>
#include <vector>

#include "core/tolerances.hpp"

namespace mv {

using Vec = Eigen::VectorXd;
using Mat = Eigen::MatrixXd;

inline bool lex_less(const Vec& a, const Vec& b) {
  for (int i = 0; i < a.size() && i < b.size(); ++i) {
    if (a[i] < b[i]) return true;
    if (a[i] > b[i]) return false;
  }
  return a.size() < b.size();
}

inline bool approx_eq(const Vec& a, const Vec& b, double eps) {
  return a.size() == b.size() && (a - b).lpNorm<Eigen::Infinity>() <= eps;
}

inline double max_abs_coord(const std::vector<Vec>& pts) {
  double s = 0.0;
  for (const auto& p : pts) s = std::max(s, p.lpNorm<Eigen::Infinity>());
  return s;
}

// Affine hull of a point set: base point plus an orthonormal basis of the
// direction space. dim == basis.cols().
struct AffineHull {
  Vec base;
  Mat basis;  // n x d, orthonormal columns
  int dim() const { return static_cast<int>(basis.cols()); }

  Vec to_local(const Vec& x) const { return basis.transpose() * (x - base); }
  Vec to_ambient(const Vec& y) const { return base + basis * y; }
};

// Greedy pivoted Gram-Schmidt; deterministic for a fixed input order.
inline AffineHull affine_hull(const std::vector<Vec>& pts) {
  AffineHull ah;
  ah.base = pts.at(0);
  const int n = static_cast<int>(ah.base.size());
  ah.basis.resize(n, 0);
  const double eps = tol::geom_for_scale(max_abs_coord(pts));
  while (ah.dim() < n) {
    int best = -1;
    double best_norm = eps;
    Vec best_res;
    for (int i = 0; i < static_cast<int>(pts.size()); ++i) {
      Vec r = pts[i] - ah.base;
      r -= ah.basis * (ah.basis.transpose() * r);
      double nr = r.norm();
      if (nr > best_norm) {
        best_norm = nr;
        best = i;
        best_res = std::move(r);
      }
    }
    if (best < 0) break;
    ah.basis.conservativeResize(n, ah.dim() + 1);
    ah.basis.col(ah.dim() - 1) = best_res / best_norm;
  }
  return ah;
}

// Rank of the span of a vector list, SVD threshold relative to the largest
// singular value (and absolute floor at the geometric tolerance).
inline int span_rank(const std::vector<Vec>& vs) {
  if (vs.empty()) return 0;
  Mat m(vs[0].size(), vs.size());
  for (size_t i = 0; i < vs.size(); ++i) m.col(static_cast<int>(i)) = vs[i];
  Eigen::JacobiSVD<Mat> svd(m);
  double thresh = std::max(tol::geom(), svd.singularValues()[0] * 1e-9);
  int r = 0;
  for (int i = 0; i < svd.singularValues().size(); ++i)
    if (svd.singularValues()[i] > thresh) ++r;
  return r;
}

// Orthonormal basis of the span of a vector list.
inline Mat span_basis(const std::vector<Vec>& vs, int ambient) {
  std::vector<Vec> pts;
  pts.emplace_back(Vec::Zero(ambient));
  for (const auto& v : vs) pts.push_back(v);
  return affine_hull(pts).basis;
}

// Orthonormal basis of the orthogonal complement of span(basis) in R^n.
inline Mat orth_complement(const Mat& basis, int n) {
  Mat full = Mat::Identity(n, n);
  Mat proj = basis.cols() > 0 ? Mat(basis * basis.transpose()) : Mat(Mat::Zero(n, n));
  std::vector<Vec> residuals;
  for (int i = 0; i < n; ++i) residuals.emplace_back(full.col(i) - proj * full.col(i));
  std::vector<Vec> pts;
  pts.emplace_back(Vec::Zero(n));
  for (auto& r : residuals) pts.push_back(r);
  return affine_hull(pts).basis;
}

inline Vec unit(const Vec& v) {
  double n = v.norm();
  if (n <= tol::geom()) throw domain_error("cannot normalize a near-zero vector");
  return v / n;
}

}  // namespace mv
