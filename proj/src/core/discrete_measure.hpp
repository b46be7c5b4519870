#pragma once

#include <functional>
#include <vector>

#include "core/linalg.hpp"

namespace mv::meas {

enum class MeasureKind { sphere, point };

struct Atom {
  Vec loc;
  double weight = 0.0;
};

// Finite atomic measure, canonical form: atoms lexicographically sorted by
// location, near-coincident atoms merged, negligible weights dropped.
struct DiscreteMeasure {
  MeasureKind kind = MeasureKind::point;
  int ambient = 0;
  std::vector<Atom> atoms;
};

// Canonicalize. With enforce_nonneg, weights below -1e-10 raise an error
// (they signal a polarization bug); the tiny remainder window is dropped.
DiscreteMeasure make_measure(MeasureKind kind, int ambient, std::vector<Atom> atoms,
                             bool enforce_nonneg);

// Signed atom arithmetic used by polarization; no canonicalization.
void accumulate(std::vector<Atom>& into, const DiscreteMeasure& m, double factor);

double total_mass(const DiscreteMeasure& m);
double integrate(const DiscreteMeasure& m, const std::function<double(const Vec&)>& f);

// Atomwise comparison after canonicalization: same atom count, locations
// within loc_tol, weights within weight_tol relative to the larger mass.
bool measures_close(const DiscreteMeasure& a, const DiscreteMeasure& b, double loc_tol,
                    double weight_tol, double* worst = nullptr);

}  // namespace mv::meas
