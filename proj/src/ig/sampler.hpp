#pragma once

#include <cstdint>

#include "core/linalg.hpp"
#include "core/subspace.hpp"

namespace mv::ig {

// Counter-based generator: every draw is a pure function of
// (seed, stream, counter), so a (seed, stream) pair replays the same sequence
// no matter how work is scheduled across threads.
struct Sampler {
  std::uint64_t seed = 0;
  std::uint64_t stream = 0;
  std::uint64_t counter = 0;

  Sampler() = default;
  Sampler(std::uint64_t seed_, std::uint64_t stream_) : seed(seed_), stream(stream_) {}

  double uniform();  // [0, 1)
  double normal();   // standard Gaussian (Box-Muller, two draws consumed)
  Vec normal_vec(int n);
  Vec sphere_vec(int n);  // uniform on the unit sphere
};

// Haar-distributed rotation: QR of a Gaussian matrix with the R-diagonal sign
// fix, then a final column flip to land in SO(n).
Mat sample_rotation(int n, Sampler& s);

// Span of the first j columns of a Haar rotation.
geom::Subspace sample_grassmann(int j, int n, Sampler& s);

// Uniform k-dimensional subspace containing the vertical line lin{e_n}:
// a Haar (k-1)-subspace of the horizontal hyperplane plus e_n itself.
geom::Subspace sample_grassmann_through_line(int k, int n, Sampler& s);

}  // namespace mv::ig
