#include "ig/sampler.hpp"

#include <cmath>

#include "core/tolerances.hpp"

namespace mv::ig {

namespace {

std::uint64_t splitmix(std::uint64_t z) {
  z ^= z >> 30;
  z *= 0xbf58476d1ce4e5b9ull;
  z ^= z >> 27;
  z *= 0x94d049bb133111ebull;
  z ^= z >> 31;
  return z;
}

std::uint64_t mix(std::uint64_t seed, std::uint64_t stream, std::uint64_t counter) {
  std::uint64_t z = seed + 0x9e3779b97f4a7c15ull;
  z = splitmix(z ^ splitmix(stream + 0xd1b54a32d192ed03ull));
  z = splitmix(z ^ splitmix(counter + 0x8cb92ba72f3d8dd7ull));
  return z;
}

}  // namespace

double Sampler::uniform() {
  return static_cast<double>(mix(seed, stream, counter++) >> 11) * 0x1.0p-53;
}

double Sampler::normal() {
  double u1 = uniform();
  double u2 = uniform();
  double r = std::sqrt(-2.0 * std::log1p(-u1));  // u1 in [0,1) => 1-u1 in (0,1]
  return r * std::cos(2.0 * M_PI * u2);
}

Vec Sampler::normal_vec(int n) {
  Vec v(n);
  for (int i = 0; i < n; ++i) v[i] = normal();
  return v;
}

Vec Sampler::sphere_vec(int n) {
  while (true) {
    Vec v = normal_vec(n);
    double norm = v.norm();
    if (norm > 1e-12) return v / norm;
  }
}

Mat sample_rotation(int n, Sampler& s) {
  if (n < 1) throw domain_error("rotation dimension must be positive");
  if (n == 1) return Mat::Identity(1, 1);
  Mat g(n, n);
  for (int j = 0; j < n; ++j)
    for (int i = 0; i < n; ++i) g(i, j) = s.normal();
  Eigen::HouseholderQR<Mat> qr(g);
  Mat q = qr.householderQ() * Mat::Identity(n, n);
  Mat r = q.transpose() * g;
  for (int j = 0; j < n; ++j)
    if (r(j, j) < 0) q.col(j) = -q.col(j);
  if (q.determinant() < 0) q.col(n - 1) = -q.col(n - 1);
  return q;
}

geom::Subspace sample_grassmann(int j, int n, Sampler& s) {
  if (j < 1 || j > n) throw domain_error("subspace dimension out of range");
  Mat r = sample_rotation(n, s);
  return geom::make_subspace(n, r.leftCols(j));
}

geom::Subspace sample_grassmann_through_line(int k, int n, Sampler& s) {
  if (k < 1 || k > n) throw domain_error("subspace dimension out of range");
  Mat frame(n, k);
  if (k > 1) {
    Mat r = sample_rotation(n - 1, s);
    frame.setZero();
    frame.block(0, 0, n - 1, k - 1) = r.leftCols(k - 1);
  }
  frame.col(k - 1) = Vec::Zero(n);
  frame(n - 1, k - 1) = 1.0;
  return geom::make_subspace(n, frame);
}

}  // namespace mv::ig
