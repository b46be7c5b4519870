#include "ig/integral_geometry.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <thread>

#include "core/area_measures.hpp"
#include "core/tolerances.hpp"
#include "fn/ma.hpp"
#include "fn/support.hpp"

namespace mv::ig {

namespace {

double pairwise_sum(const std::vector<double>& v, size_t lo, size_t hi) {
  if (hi - lo <= 8) {
    double s = 0.0;
    for (size_t i = lo; i < hi; ++i) s += v[i];
    return s;
  }
  size_t mid = lo + (hi - lo) / 2;
  return pairwise_sum(v, lo, mid) + pairwise_sum(v, mid, hi);
}

MCEstimate reduce(const std::vector<double>& values, std::uint64_t seed) {
  MCEstimate est;
  est.seed = seed;
  est.n = static_cast<long long>(values.size());
  if (values.empty()) return est;
  est.mean = pairwise_sum(values, 0, values.size()) / static_cast<double>(values.size());
  if (values.size() > 1) {
    std::vector<double> sq(values.size());
    for (size_t i = 0; i < values.size(); ++i) {
      double d = values[i] - est.mean;
      sq[i] = d * d;
    }
    double var = pairwise_sum(sq, 0, sq.size()) / static_cast<double>(values.size() - 1);
    est.stderr_ = std::sqrt(var / static_cast<double>(values.size()));
  }
  return est;
}

std::string fmt_vec(const Vec& x) {
  std::ostringstream os;
  os << "(";
  for (int i = 0; i < x.size(); ++i) os << (i ? ", " : "") << x[i];
  os << ")";
  return os.str();
}

}  // namespace

MCEstimate mc_run(long long n, std::uint64_t seed, int threads,
                  const std::function<double(Sampler&)>& draw) {
  if (n < 1) throw domain_error("sample count must be positive");
  std::vector<double> values(static_cast<size_t>(n));
  int workers = std::max(1, threads);
  workers = static_cast<int>(std::min<long long>(workers, n));
  auto chunk = [&](long long lo, long long hi) {
    for (long long i = lo; i < hi; ++i) {
      Sampler s(seed, static_cast<std::uint64_t>(i));
      values[static_cast<size_t>(i)] = draw(s);
    }
  };
  if (workers == 1) {
    chunk(0, n);
  } else {
    std::vector<std::thread> pool;
    long long per = (n + workers - 1) / workers;
    for (int w = 0; w < workers; ++w) {
      long long lo = w * per;
      long long hi = std::min(n, lo + per);
      if (lo >= hi) break;
      pool.emplace_back(chunk, lo, hi);
    }
    for (auto& t : pool) t.join();
  }
  return reduce(values, seed);
}

MCEstimate kubota_bodies(const std::function<double(const Vec&)>& f,
                         const std::vector<geom::Polytope>& bodies, long long n_samples,
                         std::uint64_t seed, int threads) {
  if (bodies.empty()) throw domain_error("at least one body is required");
  const int n = bodies[0].ambient;
  const int k = static_cast<int>(bodies.size());
  for (const auto& b : bodies)
    if (b.ambient != n) throw domain_error("bodies live in different spaces");
  if (n < 2 || k < 1 || k > n - 1)
    throw domain_error("body count must lie between 1 and n-1");

  if (k == n - 1) {
    meas::DiscreteMeasure s = meas::mixed_area_measure(bodies);
    double val = 0.0;
    for (const auto& a : s.atoms) val += f(a.loc) * a.weight;
    MCEstimate est;
    est.mean = val;
    est.stderr_ = 0.0;
    est.n = n_samples;
    est.seed = seed;
    return est;
  }

  const double scale = meas::kappa(n - 1) / meas::kappa(k);
  return mc_run(n_samples, seed, threads, [&](Sampler& s) {
    geom::Subspace e = sample_grassmann_through_line(k + 1, n, s);
    std::vector<geom::Polytope> projs;
    projs.reserve(bodies.size());
    for (const auto& b : bodies) projs.push_back(geom::project(b, e));
    meas::DiscreteMeasure sm = meas::mixed_area_measure(projs);
    double val = 0.0;
    for (const auto& a : sm.atoms) val += f(e.pull(a.loc)) * a.weight;
    return scale * val;
  });
}

MCEstimate kubota_functions(const std::function<double(const Vec&)>& phi,
                            const std::vector<fn::PLConvexFunction>& vs, long long n_samples,
                            std::uint64_t seed, int threads) {
  if (vs.empty()) throw domain_error("at least one function is required");
  const int n = vs[0].ambient;
  const int j = static_cast<int>(vs.size());
  for (const auto& v : vs) {
    if (v.ambient != n) throw domain_error("functions live in different spaces");
    if (!v.finite()) throw domain_error("the Kubota estimator needs finite functions");
  }
  if (j < 1 || j >= n) throw domain_error("function count must lie between 1 and n-1");

  const double scale = meas::kappa(n) / meas::kappa(j);
  return mc_run(n_samples, seed, threads, [&](Sampler& s) {
    geom::Subspace e = sample_grassmann(j, n, s);
    std::vector<fn::PLConvexFunction> restricted;
    restricted.reserve(vs.size());
    for (const auto& v : vs) restricted.push_back(fn::restrict_fn(v, e));
    meas::DiscreteMeasure m = fn::mixed_ma(restricted);
    double val = 0.0;
    for (const auto& a : m.atoms) val += phi(e.pull(a.loc)) * a.weight;
    return scale * val;
  });
}

MCEstimate functional_intrinsic_volume(const fn::PLConvexFunction& v, int j,
                                       const std::function<double(double)>& alpha,
                                       double support_radius, long long n_samples,
                                       std::uint64_t seed, int threads) {
  const int n = v.ambient;
  if (!v.finite()) throw domain_error("functional intrinsic volumes need finite functions");
  if (j < 0 || j > n) throw domain_error("index out of range");
  if (!(support_radius > 0.0) || !std::isfinite(support_radius))
    throw domain_error("the density needs a finite support radius");

  if (j == 0) {
    MCEstimate est;
    est.mean = alpha(0.0);
    est.n = n_samples;
    est.seed = seed;
    return est;
  }
  if (j == n) {
    meas::DiscreteMeasure m = fn::ma_measure(v);
    double val = 0.0;
    for (const auto& a : m.atoms) val += alpha(a.loc.norm()) * a.weight;
    MCEstimate est;
    est.mean = val;
    est.n = n_samples;
    est.seed = seed;
    return est;
  }

  std::vector<fn::PLConvexFunction> slots(static_cast<size_t>(j), v);
  MCEstimate est = kubota_functions([&](const Vec& x) { return alpha(x.norm()); }, slots,
                                    n_samples, seed, threads);
  double factor = meas::binomial(n, j) / meas::kappa(n - j);
  est.mean *= factor;
  est.stderr_ *= factor;
  return est;
}

MCEstimate sphere_segment_average(const std::function<double(const geom::Polytope&)>& psi,
                                  int n, long long n_samples, std::uint64_t seed, int threads) {
  if (n < 1) throw domain_error("dimension must be positive");
  const double scale = n * meas::kappa(n);
  return mc_run(n_samples, seed, threads, [&](Sampler& s) {
    Vec e = s.sphere_vec(n);
    return scale * psi(geom::segment(Vec::Zero(n), e));
  });
}

VerificationReport support_nesting_ma(const fn::PLConvexFunction& v, int j, int k,
                                      const std::vector<Vec>& extra_witnesses) {
  const int n = v.ambient;
  if (!v.finite()) throw domain_error("support analysis needs a finite function");
  if (j < 1 || j > k || k > n) throw domain_error("indices must satisfy 1 <= j <= k <= n");

  VerificationReport report;
  report.theorem = "ma-support-nesting";
  {
    std::ostringstream os;
    os << "n=" << n << " j=" << j << " k=" << k << " pieces=" << v.pieces.size();
    report.inputs = os.str();
  }

  std::vector<Vec> witnesses = fn::complex_points(v);
  auto add = [&](const Vec& x) {
    for (const auto& w : witnesses)
      if (approx_eq(w, x, 1e-9)) return;
    witnesses.push_back(x);
  };
  add(Vec::Zero(n));
  for (const auto& x : extra_witnesses) add(x);

  for (const auto& x : witnesses) {
    report.note_witness();
    bool in_k = fn::ma_support_member_witness(v, x, k);
    bool in_j = fn::ma_support_member_witness(v, x, j);
    if (in_k && !in_j)
      report.violate("point " + fmt_vec(x) + " lies in the k-slot support but not the j-slot support");
  }
  return report;
}

}  // namespace mv::ig
