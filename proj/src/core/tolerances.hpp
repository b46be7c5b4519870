#pragma once

#include <atomic>
#include <stdexcept>
#include <string>

namespace mv {

// Single global geometric tolerance used for coincidence/coplanarity/rank
// decisions. Desk-scale inputs are assumed well conditioned; the tolerance is
// configurable (CLI --tol) but defaults to 1e-9 everywhere.
namespace tol {

inline std::atomic<double>& geom_slot() {
  static std::atomic<double> eps{1e-9};
  return eps;
}

inline double geom() { return geom_slot().load(std::memory_order_relaxed); }

inline void set_geom(double eps) {
  if (!(eps > 0.0)) throw std::invalid_argument("tolerance must be positive");
  geom_slot().store(eps, std::memory_order_relaxed);
}

// Scale-aware variant: absolute tolerance stretched by the magnitude of the
// data it guards.
inline double geom_for_scale(double scale) {
  double s = scale < 1.0 ? 1.0 : scale;
  return geom() * s;
}

// Weight handling for discrete measures.
inline double measure_merge_radius() { return 1e-9; }
inline double measure_drop_weight() { return 1e-12; }
inline double measure_negativity() { return -1e-10; }

}  // namespace tol

// Error taxonomy mirrored by the C API / CLI exit codes.
struct parse_error : std::runtime_error {
  explicit parse_error(const std::string& m) : std::runtime_error(m) {}
};
struct domain_error : std::runtime_error {
  explicit domain_error(const std::string& m) : std::runtime_error(m) {}
};
struct verification_error : std::runtime_error {
  explicit verification_error(const std::string& m) : std::runtime_error(m) {}
};

}  // namespace mv
