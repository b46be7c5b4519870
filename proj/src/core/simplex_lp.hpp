#pragma once

#include "core/linalg.hpp"

namespace mv::lp {

enum class LPStatus { optimal, infeasible, unbounded };

struct LPResult {
  LPStatus status = LPStatus::infeasible;
  Vec x;
  double value = 0.0;
};

// Maximize c.x subject to A x <= b (x free). Dense two-phase simplex with
// Bland's rule; intended for the tiny systems this library produces
// (dimensions <= 6, a few dozen constraints).
LPResult lp_max(const Mat& a, const Vec& b, const Vec& c);

// Largest inscribed-ball center of {x : A x <= b}: maximize t subject to
// A x + t*|a_i| <= b, t <= cap. Returns status plus (center, radius).
struct ChebyshevResult {
  bool feasible = false;
  Vec center;
  double radius = 0.0;
};
ChebyshevResult chebyshev_center(const Mat& a, const Vec& b, double cap = 1.0);

}  // namespace mv::lp
