#include "simpca/kernels.hpp"

#include <cmath>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace simpca::kernels {

namespace {

// R^2 of y on the listed columns; returns 0 for a zero target so the scans
// never throw from inside a parallel region.
double fit_r2(const Matrix& x, const Vector& y, const IndexList& cols) {
  const double tss = y.squaredNorm();
  if (tss == 0.0 || cols.empty()) return 0.0;
  Matrix a(x.rows(), static_cast<Index>(cols.size()));
  for (std::size_t k = 0; k < cols.size(); ++k)
    a.col(static_cast<Index>(k)) = x.col(cols[k]);
  const Vector resid = y - a * solve_ls(a, y);
  return 1.0 - resid.squaredNorm() / tss;
}

double candidate_entry(const Matrix& x, const Vector& target,
                       const IndexList& base, Index candidate) {
  IndexList cols = base;
  cols.push_back(candidate);
  return fit_r2(x, target, cols);
}

double removal_entry(const Matrix& x, const Vector& target,
                     const IndexList& support, std::size_t k) {
  IndexList cols;
  cols.reserve(support.size());
  for (std::size_t i = 0; i < support.size(); ++i)
    if (i != k) cols.push_back(support[i]);
  return fit_r2(x, target, cols);
}

double vif_entry(const Matrix& x, const IndexList& subset, std::size_t k) {
  if (subset.size() < 2) return 0.0;
  IndexList others;
  for (std::size_t i = 0; i < subset.size(); ++i)
    if (i != k) others.push_back(subset[i]);
  return fit_r2(x, x.col(subset[k]), others);
}

double abs_corr(const Matrix& x, Index i, Index j) {
  const Vector a = x.col(i).array() - x.col(i).mean();
  const Vector b = x.col(j).array() - x.col(j).mean();
  const double den = std::sqrt(a.squaredNorm() * b.squaredNorm());
  return den == 0.0 ? 0.0 : std::abs(a.dot(b)) / den;
}

std::vector<std::pair<std::size_t, std::size_t>> pairs_of(std::size_t m) {
  std::vector<std::pair<std::size_t, std::size_t>> pairs;
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = i + 1; j < m; ++j) pairs.emplace_back(i, j);
  return pairs;
}

}  // namespace

namespace serial {

std::vector<double> candidate_r2(const Matrix& x, const Vector& target,
                                 const IndexList& base,
                                 const IndexList& candidates) {
  std::vector<double> out(candidates.size());
  for (std::size_t k = 0; k < candidates.size(); ++k)
    out[k] = candidate_entry(x, target, base, candidates[k]);
  return out;
}

std::vector<double> removal_r2(const Matrix& x, const Vector& target,
                               const IndexList& support) {
  std::vector<double> out(support.size());
  for (std::size_t k = 0; k < support.size(); ++k)
    out[k] = removal_entry(x, target, support, k);
  return out;
}

std::vector<double> vif(const Matrix& x, const IndexList& subset) {
  std::vector<double> out(subset.size());
  for (std::size_t k = 0; k < subset.size(); ++k)
    out[k] = vif_entry(x, subset, k);
  return out;
}

std::vector<double> abs_corr_pairs(const Matrix& x, const IndexList& subset) {
  const auto pairs = pairs_of(subset.size());
  std::vector<double> out(pairs.size());
  for (std::size_t k = 0; k < pairs.size(); ++k)
    out[k] = abs_corr(x, subset[pairs[k].first], subset[pairs[k].second]);
  return out;
}

}  // namespace serial

namespace omp {

std::vector<double> candidate_r2(const Matrix& x, const Vector& target,
                                 const IndexList& base,
                                 const IndexList& candidates) {
  const auto m = static_cast<long>(candidates.size());
  std::vector<double> out(candidates.size());
#pragma omp parallel for schedule(dynamic)
  for (long k = 0; k < m; ++k)
    out[static_cast<std::size_t>(k)] =
        candidate_entry(x, target, base, candidates[static_cast<std::size_t>(k)]);
  return out;
}

std::vector<double> removal_r2(const Matrix& x, const Vector& target,
                               const IndexList& support) {
  const auto m = static_cast<long>(support.size());
  std::vector<double> out(support.size());
#pragma omp parallel for schedule(dynamic)
  for (long k = 0; k < m; ++k)
    out[static_cast<std::size_t>(k)] =
        removal_entry(x, target, support, static_cast<std::size_t>(k));
  return out;
}

std::vector<double> vif(const Matrix& x, const IndexList& subset) {
  const auto m = static_cast<long>(subset.size());
  std::vector<double> out(subset.size());
#pragma omp parallel for schedule(dynamic)
  for (long k = 0; k < m; ++k)
    out[static_cast<std::size_t>(k)] =
        vif_entry(x, subset, static_cast<std::size_t>(k));
  return out;
}

std::vector<double> abs_corr_pairs(const Matrix& x, const IndexList& subset) {
  const auto pairs = pairs_of(subset.size());
  const auto m = static_cast<long>(pairs.size());
  std::vector<double> out(pairs.size());
#pragma omp parallel for schedule(static)
  for (long k = 0; k < m; ++k) {
    const auto& pr = pairs[static_cast<std::size_t>(k)];
    out[static_cast<std::size_t>(k)] =
        abs_corr(x, subset[pr.first], subset[pr.second]);
  }
  return out;
}

}  // namespace omp

int max_threads() {
#ifdef _OPENMP
  return omp_get_max_threads();
#else
  return 1;
#endif
}

}  // namespace simpca::kernels
