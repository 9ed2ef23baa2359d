#pragma once

// Data-parallel scans used by selection and diagnostics.
//
// Every kernel exists twice: `serial::` is the plain reference loop kept for
// testing and benchmarking, `omp::` splits the independent evaluations across
// OpenMP threads. Both compute each entry with identical arithmetic, so the
// outputs are bitwise equal and any argmax taken over them is deterministic.

#include "simpca/matrix_core.hpp"

#include <vector>

namespace simpca::kernels {

namespace serial {

/// R^2 of `target` regressed on columns base + {c}, for each candidate c.
std::vector<double> candidate_r2(const Matrix& x, const Vector& target,
                                 const IndexList& base,
                                 const IndexList& candidates);

/// R^2 of `target` regressed on support minus support[k], for each k.
std::vector<double> removal_r2(const Matrix& x, const Vector& target,
                               const IndexList& support);

/// R^2 of each subset column regressed on the other subset columns.
std::vector<double> vif(const Matrix& x, const IndexList& subset);

/// |corr| over unordered pairs (i < j) of the subset, row-major.
std::vector<double> abs_corr_pairs(const Matrix& x, const IndexList& subset);

}  // namespace serial

namespace omp {

std::vector<double> candidate_r2(const Matrix& x, const Vector& target,
                                 const IndexList& base,
                                 const IndexList& candidates);
std::vector<double> removal_r2(const Matrix& x, const Vector& target,
                               const IndexList& support);
std::vector<double> vif(const Matrix& x, const IndexList& subset);
std::vector<double> abs_corr_pairs(const Matrix& x, const IndexList& subset);

}  // namespace omp

/// Threads the omp kernels will use (1 when built without OpenMP).
int max_threads();

}  // namespace simpca::kernels
