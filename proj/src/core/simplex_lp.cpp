#include "core/simplex_lp.hpp"

namespace mv::lp {

namespace {

constexpr double kPivTol = 1e-11;

// Standard-form core: minimize cost.y subject to G y = h, y >= 0, h >= 0.
// Returns false if the phase hits an unbounded ray (phase 2 only).
struct Tableau {
  Mat t;                  // m x (cols+1), last column is the rhs
  std::vector<int> basis;  // per row, index of the basic column
  int cols = 0;

  int rows() const { return static_cast<int>(t.rows()); }

  void pivot(int r, int c) {
    t.row(r) /= t(r, c);
    for (int i = 0; i < rows(); ++i) {
      if (i == r || std::abs(t(i, c)) <= 0.0) continue;
      t.row(i) -= t(i, c) * t.row(r);
    }
    basis[static_cast<size_t>(r)] = c;
  }
};

enum class PhaseOutcome { optimal, unbounded };

// Minimizes reduced costs z (length cols) over the tableau; Bland's rule.
PhaseOutcome run_simplex(Tableau& tb, Vec& z, double& objective) {
  const int m = tb.rows();
  const long max_iter = 400L * (tb.cols + m + 1);
  for (long iter = 0; iter < max_iter; ++iter) {
    int enter = -1;
    for (int j = 0; j < tb.cols; ++j) {
      if (z[j] < -kPivTol) {
        enter = j;
        break;
      }
    }
    if (enter < 0) return PhaseOutcome::optimal;
    int leave = -1;
    double best_ratio = 0.0;
    for (int i = 0; i < m; ++i) {
      if (tb.t(i, enter) > kPivTol) {
        double ratio = tb.t(i, tb.cols) / tb.t(i, enter);
        if (leave < 0 || ratio < best_ratio - kPivTol ||
            (ratio < best_ratio + kPivTol &&
             tb.basis[static_cast<size_t>(i)] < tb.basis[static_cast<size_t>(leave)])) {
          leave = i;
          best_ratio = ratio;
        }
      }
    }
    if (leave < 0) return PhaseOutcome::unbounded;
    // Update reduced costs alongside the pivot.
    double zc = z[enter];
    tb.pivot(leave, enter);
    z -= zc * tb.t.row(leave).head(tb.cols).transpose();
    objective -= zc * tb.t(leave, tb.cols);
  }
  throw domain_error("simplex iteration limit exceeded");
}

}  // namespace

LPResult lp_max(const Mat& a, const Vec& b, const Vec& c) {
  const int m = static_cast<int>(a.rows());
  const int n = static_cast<int>(a.cols());
  // y = [x+ (n), x- (n), slack (m)], G y = h with rows sign-fixed so h >= 0.
  const int cols = 2 * n + m;
  Tableau tb;
  tb.cols = cols;
  tb.t = Mat::Zero(m, cols + 1);
  std::vector<int> flipped(static_cast<size_t>(m), 0);
  for (int i = 0; i < m; ++i) {
    double s = b[i] < 0 ? -1.0 : 1.0;
    flipped[static_cast<size_t>(i)] = b[i] < 0;
    for (int j = 0; j < n; ++j) {
      tb.t(i, j) = s * a(i, j);
      tb.t(i, n + j) = -s * a(i, j);
    }
    tb.t(i, 2 * n + i) = s;
    tb.t(i, cols) = s * b[i];
  }

  // Phase 1: artificial basis where the slack got flipped.
  tb.basis.assign(static_cast<size_t>(m), -1);
  bool need_phase1 = false;
  for (int i = 0; i < m; ++i) {
    if (!flipped[static_cast<size_t>(i)]) {
      tb.basis[static_cast<size_t>(i)] = 2 * n + i;
    } else {
      need_phase1 = true;
    }
  }
  if (need_phase1) {
    int art = 0;
    for (int i = 0; i < m; ++i)
      if (flipped[static_cast<size_t>(i)]) ++art;
    Mat ext = Mat::Zero(m, cols + art + 1);
    ext.block(0, 0, m, cols) = tb.t.block(0, 0, m, cols);
    ext.col(cols + art) = tb.t.col(cols);
    int k = 0;
    for (int i = 0; i < m; ++i) {
      if (flipped[static_cast<size_t>(i)]) {
        ext(i, cols + k) = 1.0;
        tb.basis[static_cast<size_t>(i)] = cols + k;
        ++k;
      }
    }
    tb.t = std::move(ext);
    int cols0 = tb.cols;
    tb.cols = cols + art;
    // Phase-1 cost: one per artificial column; z_j = c_j - c_B (B^-1 A)_j.
    Vec z = Vec::Zero(tb.cols);
    for (int j = cols0; j < tb.cols; ++j) z[j] = 1.0;
    double obj = 0.0;
    for (int i = 0; i < m; ++i) {
      if (tb.basis[static_cast<size_t>(i)] >= cols0) {
        z -= tb.t.row(i).head(tb.cols).transpose();
        obj -= tb.t(i, tb.cols);
      }
    }
    run_simplex(tb, z, obj);
    if (obj < -1e-7) return LPResult{LPStatus::infeasible, Vec(), 0.0};
    // Drive any lingering artificial variables out of the basis.
    for (int i = 0; i < m; ++i) {
      if (tb.basis[static_cast<size_t>(i)] >= cols0) {
        int piv = -1;
        for (int j = 0; j < cols0; ++j) {
          if (std::abs(tb.t(i, j)) > 1e-9) {
            piv = j;
            break;
          }
        }
        if (piv >= 0) tb.pivot(i, piv);
        // A fully-zero row is redundant; its artificial stays at level 0.
      }
    }
    Mat trimmed = Mat::Zero(m, cols + 1);
    trimmed.block(0, 0, m, cols) = tb.t.block(0, 0, m, cols);
    trimmed.col(cols) = tb.t.col(tb.cols);
    tb.t = std::move(trimmed);
    tb.cols = cols;
    for (auto& bi : tb.basis)
      if (bi >= cols) bi = -2;  // redundant row marker
  }

  // Phase 2: minimize -c.x = (-c).x+ + c.x-.
  Vec cost = Vec::Zero(cols);
  for (int j = 0; j < n; ++j) {
    cost[j] = -c[j];
    cost[n + j] = c[j];
  }
  Vec z = cost;
  double obj = 0.0;
  for (int i = 0; i < m; ++i) {
    int bi = tb.basis[static_cast<size_t>(i)];
    if (bi >= 0 && std::abs(cost[bi]) > 0.0) {
      z -= cost[bi] * tb.t.row(i).head(cols).transpose();
      obj -= cost[bi] * tb.t(i, cols);
    }
  }
  for (int i = 0; i < m; ++i) {
    int bi = tb.basis[static_cast<size_t>(i)];
    if (bi >= 0) z[bi] = 0.0;  // clean roundoff on basic columns
  }
  if (run_simplex(tb, z, obj) == PhaseOutcome::unbounded)
    return LPResult{LPStatus::unbounded, Vec(), 0.0};

  Vec y = Vec::Zero(cols);
  for (int i = 0; i < m; ++i) {
    int bi = tb.basis[static_cast<size_t>(i)];
    if (bi >= 0) y[bi] = tb.t(i, cols);
  }
  LPResult res;
  res.status = LPStatus::optimal;
  res.x = y.head(n) - y.segment(n, n);
  res.value = c.dot(res.x);
  return res;
}

ChebyshevResult chebyshev_center(const Mat& a, const Vec& b, double cap) {
  const int m = static_cast<int>(a.rows());
  const int n = static_cast<int>(a.cols());
  Mat aa = Mat::Zero(m + 1, n + 1);
  Vec bb(m + 1);
  for (int i = 0; i < m; ++i) {
    aa.block(i, 0, 1, n) = a.row(i);
    aa(i, n) = a.row(i).norm();
    bb[i] = b[i];
  }
  aa(m, n) = 1.0;
  bb[m] = cap;
  Vec c = Vec::Zero(n + 1);
  c[n] = 1.0;
  LPResult r = lp_max(aa, bb, c);
  ChebyshevResult out;
  // A negative best inflation radius means the region itself is empty.
  if (r.status != LPStatus::optimal || r.x[n] < -1e-9) return out;
  out.feasible = true;
  out.center = r.x.head(n);
  out.radius = std::max(0.0, r.x[n]);
  return out;
}

}  // namespace mv::lp
