#pragma once

#include "core/linalg.hpp"

namespace mv::geom {

// Linear subspace of R^n given by an orthonormal column frame (n x j).
struct Subspace {
  int ambient = 0;
  Mat frame;

  int dim() const { return static_cast<int>(frame.cols()); }
  Vec push(const Vec& x) const { return frame.transpose() * x; }  // R^n -> R^j
  Vec pull(const Vec& y) const { return frame * y; }              // R^j -> R^n
};

inline Subspace make_subspace(int ambient, Mat frame) {
  if (frame.rows() != ambient)
    throw domain_error("subspace frame has wrong ambient dimension");
  if (frame.cols() < 1 || frame.cols() > ambient)
    throw domain_error("subspace dimension out of range");
  Mat gram = frame.transpose() * frame;
  if ((gram - Mat::Identity(frame.cols(), frame.cols())).lpNorm<Eigen::Infinity>() > 1e-9)
    throw domain_error("subspace frame is not orthonormal");
  return Subspace{ambient, std::move(frame)};
}

// The distinguished vertical line span{e_n} and its complement e_n-perp.
inline Subspace vertical_line(int n) {
  Mat f = Mat::Zero(n, 1);
  f(n - 1, 0) = 1.0;
  return Subspace{n, std::move(f)};
}

inline Subspace horizontal_hyperplane(int n) {
  Mat f = Mat::Zero(n, n - 1);
  for (int i = 0; i + 1 < n; ++i) f(i, i) = 1.0;
  return Subspace{n, std::move(f)};
}

// Re-express an ambient subspace E (satisfying E ⊆ span(F)) in F's coordinates.
inline Subspace express_in(const Subspace& outer, const Subspace& inner) {
  return make_subspace(outer.dim(), outer.frame.transpose() * inner.frame);
}

}  // namespace mv::geom
