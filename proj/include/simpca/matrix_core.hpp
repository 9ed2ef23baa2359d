#pragma once

// Dense linear-algebra substrate shared by every other module: preprocessing,
// SVD, rank-aware least squares and collinearity diagnostics.

#include <Eigen/Dense>

#include <string>
#include <vector>

namespace simpca {

using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;
using Index = Eigen::Index;

/// Ordered list of column indices (0-based).
using IndexList = std::vector<Index>;

enum class Scaling { None, UnitVariance };

/// Centered (and optionally scaled) n x p observation matrix.
///
/// `column_means` and `column_scales` are kept in original units so that
/// `to_raw()` reproduces the input. Unit-variance scaling divides by the
/// sample standard deviation (denominator n - 1).
struct DataMatrix {
  Matrix values;
  std::vector<std::string> column_names;
  bool centered = true;
  Scaling scaling = Scaling::None;
  Vector column_means;
  Vector column_scales;

  Index n() const { return values.rows(); }
  Index p() const { return values.cols(); }

  /// Undo scaling and centering.
  Matrix to_raw() const;

  /// Columns of `values` selected by `subset`, in the given order.
  Matrix columns(const IndexList& subset) const;
};

/// Wraps an already-centered matrix without touching it (scales = 1).
/// Used for deflated matrices and tests; the caller guarantees centering.
DataMatrix as_centered(Matrix values, std::vector<std::string> names = {});

/// Centers and optionally scales `raw`. Column names default to x1..xp.
DataMatrix center_scale(const Matrix& raw, Scaling scaling,
                        std::vector<std::string> names = {});

/// S = X'X, kept symmetric.
struct CrossProduct {
  Matrix s;
};
CrossProduct cross_product(const DataMatrix& x);

/// Thin SVD truncated at the numerical rank.
///
/// Singular values are non-increasing; the rank cutoff is
/// max(n, p) * eps * sigma_1. Each column of V is sign-fixed so that its
/// largest-magnitude entry is positive (U follows).
struct Svd {
  Matrix u;
  Vector lambda;
  Matrix v;
  Index rank() const { return lambda.size(); }
};
Svd svd(const Matrix& x);
inline Svd svd(const DataMatrix& x) { return svd(x.values); }

/// Flips each column of `v` (and the matching column of `u` when given) so
/// that its largest-|value| entry is positive. Ties go to the lowest row.
void fix_signs(Matrix& v, Matrix* u = nullptr);

/// Minimum-norm least-squares solution of a * coef = b through the SVD
/// pseudo-inverse. Singular values below max(n, k) * eps * sigma_1 are
/// treated as zero, so rank-deficient designs are fine.
Matrix solve_ls(const Matrix& a, const Matrix& b);
Vector solve_ls(const Matrix& a, const Vector& b);

/// R^2 = 1 - |b - a coef|^2 / |b|^2 of the least-squares fit of b on the
/// columns of a. Assumes centered data (no intercept). Zero columns -> 0.
double r_squared(const Matrix& a, const Vector& b);

/// Per-variable squared multiple correlation ("Vif" in the tables): R^2 of
/// regressing each column of the subset on the remaining subset columns.
/// A subset of one variable gives 0.
std::vector<double> vif(const DataMatrix& x, const IndexList& subset);
std::vector<double> vif(const DataMatrix& x);

/// |corr| for each unordered pair (i < j) of the subset, row-major over
/// pairs. Errors with ZeroVarianceColumn on a constant column.
std::vector<double> pairwise_abs_correlations(const DataMatrix& x,
                                              const IndexList& subset);

/// Pearson correlation of two vectors (centered internally).
double correlation(const Vector& a, const Vector& b);

IndexList all_indices(Index p);

}  // namespace simpca
