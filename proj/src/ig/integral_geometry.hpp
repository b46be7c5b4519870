#pragma once

#include <cstdint>
#include <functional>
#include <vector>

#include "core/polytope.hpp"
#include "core/report.hpp"
#include "fn/pl_function.hpp"
#include "ig/sampler.hpp"

namespace mv::ig {

struct MCEstimate {
  double mean = 0.0;
  double stderr_ = 0.0;  // sample standard deviation / sqrt(N)
  long long n = 0;
  std::uint64_t seed = 0;
};

// Shared Monte Carlo driver: sample i draws from its own substream
// (seed, stream = i), so estimates are bit-identical for a given seed no
// matter how many worker threads carry the loop.
MCEstimate mc_run(long long n, std::uint64_t seed, int threads,
                  const std::function<double(Sampler&)>& draw);

// Estimates the integral of f against the mixed area measure
// S(K_1,...,K_k, B_L[n-1-k]; .) by averaging, over uniform (k+1)-subspaces E
// through the vertical line, the exact atom sum of f against the mixed area
// measure of the projected bodies inside E, scaled by kappa_{n-1}/kappa_k.
// k == n-1 needs no sampling and reports standard error 0.
MCEstimate kubota_bodies(const std::function<double(const Vec&)>& f,
                         const std::vector<geom::Polytope>& bodies, long long n_samples,
                         std::uint64_t seed, int threads);

// Estimates the integral of phi against the mixed Monge-Ampere measure
// MA(v_1,...,v_j, h_B[n-j]; .) by averaging, over uniform j-subspaces E, the
// exact atom sum of phi against the mixed measure of the restrictions,
// scaled by kappa_n/kappa_j. Requires 1 <= j < n.
MCEstimate kubota_functions(const std::function<double(const Vec&)>& phi,
                            const std::vector<fn::PLConvexFunction>& vs, long long n_samples,
                            std::uint64_t seed, int threads);

// Functional intrinsic volume with radial density alpha:
//   binom(n,j)/kappa_{n-j} * integral of alpha(|x|) d MA(v[j], h_B[n-j]; x).
// j == 0 returns alpha(0) exactly; j == n the exact atom sum; otherwise the
// Kubota estimator above. The density must declare a finite support radius.
MCEstimate functional_intrinsic_volume(const fn::PLConvexFunction& v, int j,
                                       const std::function<double(double)>& alpha,
                                       double support_radius, long long n_samples,
                                       std::uint64_t seed, int threads);

// Monte Carlo side of the segment-average identity
//   integral over the sphere of psi([o,e]) de  ==  kappa_{n-1} * psi(B^n):
// averages psi([o,e]) over uniform directions and scales by n*kappa_n.
MCEstimate sphere_segment_average(const std::function<double(const geom::Polytope&)>& psi,
                                  int n, long long n_samples, std::uint64_t seed, int threads);

// Checks, over the cells of v's linearity complex plus caller witnesses, that
// membership of x in the support of MA(v[k], h_B[n-k]; .) implies membership
// for MA(v[j], h_B[n-j]; .), both decided through explicit witness subspaces.
VerificationReport support_nesting_ma(const fn::PLConvexFunction& v, int j, int k,
                                      const std::vector<Vec>& extra_witnesses);

}  // namespace mv::ig
