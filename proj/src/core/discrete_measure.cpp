#include "core/discrete_measure.hpp"

#include <algorithm>
#include <cmath>

namespace mv::meas {

DiscreteMeasure make_measure(MeasureKind kind, int ambient, std::vector<Atom> atoms,
                             bool enforce_nonneg) {
  for (const auto& a : atoms) {
    if (static_cast<int>(a.loc.size()) != ambient)
      throw domain_error("measure atom has wrong dimension");
    if (kind == MeasureKind::sphere && std::abs(a.loc.norm() - 1.0) > 1e-7)
      throw domain_error("sphere measure atom is not a unit vector");
  }
  std::sort(atoms.begin(), atoms.end(),
            [](const Atom& a, const Atom& b) { return lex_less(a.loc, b.loc); });
  const double radius = tol::measure_merge_radius();
  std::vector<Atom> merged;
  for (const auto& a : atoms) {
    bool absorbed = false;
    for (int k = static_cast<int>(merged.size()) - 1; k >= 0; --k) {
      if (a.loc[0] - merged[k].loc[0] > radius) break;
      if ((a.loc - merged[k].loc).norm() <= radius) {
        merged[k].weight += a.weight;
        absorbed = true;
        break;
      }
    }
    if (!absorbed) merged.push_back(a);
  }
  // Polarization can leave +- pairs at slightly split copies of what is
  // geometrically one location: normals (and tie points) of sliver facets are
  // ill-conditioned, so the same direction re-derived from different subset
  // sums can drift well past the merge radius. Opposite signs inside a wider,
  // magnitude-relative window are such artifacts; fold them into the heavier
  // partner. Genuine atoms of a nonnegative measure are never negative, so
  // this touches no legitimate mass.
  if (enforce_nonneg) {
    for (size_t i = 0; i < merged.size(); ++i) {
      if (merged[i].weight >= 0.0) continue;
      int best = -1;
      double best_d = std::numeric_limits<double>::infinity();
      for (size_t j = 0; j < merged.size(); ++j) {
        if (j == i || merged[j].weight <= 0.0) continue;
        double d = (merged[i].loc - merged[j].loc).norm() /
                   std::max(1.0, merged[i].loc.norm());
        if (d < best_d) {
          best_d = d;
          best = static_cast<int>(j);
        }
      }
      if (best >= 0 && best_d <= 1e-6) {
        merged[static_cast<size_t>(best)].weight += merged[i].weight;
        merged[i].weight = 0.0;
      }
    }
  }

  // Cancellation noise in polarization sums scales with the largest term, so
  // the negativity floor (and the drop window) must be weight-relative.
  double scale = 1.0;
  for (const auto& a : merged) scale = std::max(scale, std::abs(a.weight));
  std::vector<Atom> kept;
  for (auto& a : merged) {
    if (enforce_nonneg && a.weight < tol::measure_negativity() * scale)
      throw domain_error("measure has a significantly negative atom (polarization bug)");
    if (std::abs(a.weight) < tol::measure_drop_weight() * scale) continue;
    if (enforce_nonneg && a.weight < 0.0) continue;  // inside the tolerance window
    kept.push_back(std::move(a));
  }
  DiscreteMeasure out;
  out.kind = kind;
  out.ambient = ambient;
  out.atoms = std::move(kept);
  return out;
}

void accumulate(std::vector<Atom>& into, const DiscreteMeasure& m, double factor) {
  for (const auto& a : m.atoms) into.push_back(Atom{a.loc, a.weight * factor});
}

double total_mass(const DiscreteMeasure& m) {
  double s = 0.0;
  for (const auto& a : m.atoms) s += a.weight;
  return s;
}

double integrate(const DiscreteMeasure& m, const std::function<double(const Vec&)>& f) {
  double s = 0.0;
  for (const auto& a : m.atoms) s += a.weight * f(a.loc);
  return s;
}

bool measures_close(const DiscreteMeasure& a, const DiscreteMeasure& b, double loc_tol,
                    double weight_tol, double* worst) {
  if (worst) *worst = 0.0;
  if (a.atoms.size() != b.atoms.size()) {
    if (worst) *worst = std::numeric_limits<double>::infinity();
    return false;
  }
  double scale = std::max({1.0, std::abs(total_mass(a)), std::abs(total_mass(b))});
  // Greedy nearest matching: canonical sorting can transpose atoms whose
  // leading coordinates agree to float noise, and far-out atoms deserve a
  // location tolerance relative to their magnitude.
  std::vector<char> used(b.atoms.size(), 0);
  bool ok = true;
  for (const auto& atom : a.atoms) {
    int best = -1;
    double best_dl = std::numeric_limits<double>::infinity();
    for (size_t j = 0; j < b.atoms.size(); ++j) {
      if (used[j]) continue;
      double dl = (atom.loc - b.atoms[j].loc).norm() / std::max(1.0, atom.loc.norm());
      if (dl < best_dl) {
        best_dl = dl;
        best = static_cast<int>(j);
      }
    }
    used[static_cast<size_t>(best)] = 1;
    double dw = std::abs(atom.weight - b.atoms[static_cast<size_t>(best)].weight) / scale;
    if (worst) *worst = std::max(*worst, std::max(best_dl, dw));
    if (best_dl > loc_tol || dw > weight_tol) ok = false;
  }
  return ok;
}

}  // namespace mv::meas
