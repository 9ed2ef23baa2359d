#pragma once

#include "simpca/matrix_core.hpp"

#include <algorithm>
#include <cmath>
#include <random>

namespace simpca::testing {

inline Matrix gaussian(Index n, Index p, std::mt19937_64& gen) {
  std::normal_distribution<double> d;
  Matrix m(n, p);
  for (Index j = 0; j < p; ++j)
    for (Index i = 0; i < n; ++i) m(i, j) = d(gen);
  return m;
}

inline Matrix centered(Matrix m) {
  m.rowwise() -= m.colwise().mean();
  return m;
}

// Centered data with correlated columns (random mixing of latent factors).
inline DataMatrix random_data(Index n, Index p, std::mt19937_64& gen) {
  const Index k = std::max<Index>(1, p / 2);
  Matrix x = gaussian(n, k, gen) * gaussian(k, p, gen) + 0.5 * gaussian(n, p, gen);
  return center_scale(x, Scaling::None);
}

inline Matrix random_orthonormal(Index p, Index d, std::mt19937_64& gen) {
  Eigen::HouseholderQR<Matrix> qr(gaussian(p, d, gen));
  return qr.householderQ() * Matrix::Identity(p, d);
}

inline IndexList random_support(Index p, Index size, std::mt19937_64& gen) {
  IndexList all = all_indices(p);
  std::shuffle(all.begin(), all.end(), gen);
  all.resize(static_cast<std::size_t>(size));
  std::sort(all.begin(), all.end());
  return all;
}

inline double rel(double a, double b) {
  return std::abs(a - b) / std::max({std::abs(a), std::abs(b), 1e-300});
}

}  // namespace simpca::testing
