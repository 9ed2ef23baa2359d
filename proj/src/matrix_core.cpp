#include "simpca/matrix_core.hpp"

#include "simpca/error.hpp"
#include "simpca/kernels.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

namespace simpca {

namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();

std::vector<std::string> default_names(Index p) {
  std::vector<std::string> names;
  names.reserve(static_cast<std::size_t>(p));
  for (Index j = 0; j < p; ++j) names.push_back("x" + std::to_string(j + 1));
  return names;
}

}  // namespace

Matrix DataMatrix::to_raw() const {
  Matrix raw = values;
  for (Index j = 0; j < p(); ++j) {
    raw.col(j) = raw.col(j) * column_scales(j);
    raw.col(j).array() += column_means(j);
  }
  return raw;
}

Matrix DataMatrix::columns(const IndexList& subset) const {
  Matrix out(n(), static_cast<Index>(subset.size()));
  for (std::size_t k = 0; k < subset.size(); ++k)
    out.col(static_cast<Index>(k)) = values.col(subset[k]);
  return out;
}

DataMatrix as_centered(Matrix values, std::vector<std::string> names) {
  DataMatrix dm;
  const Index p = values.cols();
  dm.column_names = names.empty() ? default_names(p) : std::move(names);
  dm.values = std::move(values);
  dm.column_means = Vector::Zero(p);
  dm.column_scales = Vector::Ones(p);
  return dm;
}

DataMatrix center_scale(const Matrix& raw, Scaling scaling,
                        std::vector<std::string> names) {
  const Index n = raw.rows();
  const Index p = raw.cols();
  if (n < 2 || p < 1)
    throw DataError(ErrorCode::NonFiniteInput,
                    "matrix-core: need at least 2 rows and 1 column, got " +
                        std::to_string(n) + "x" + std::to_string(p));
  if (!names.empty() && static_cast<Index>(names.size()) != p)
    throw ConfigError("matrix-core: " + std::to_string(names.size()) +
                      " column names for " + std::to_string(p) + " columns");
  for (Index j = 0; j < p; ++j)
    for (Index i = 0; i < n; ++i)
      if (!std::isfinite(raw(i, j)))
        throw DataError(ErrorCode::NonFiniteInput,
                        "matrix-core: non-finite value at row " +
                            std::to_string(i) + ", column " +
                            std::to_string(j));

  DataMatrix dm;
  dm.column_names = names.empty() ? default_names(p) : std::move(names);
  dm.scaling = scaling;
  dm.column_means = raw.colwise().mean().transpose();
  dm.values = raw.rowwise() - dm.column_means.transpose();
  dm.column_scales = Vector::Ones(p);

  if (scaling == Scaling::UnitVariance) {
    for (Index j = 0; j < p; ++j) {
      const double ss = dm.values.col(j).squaredNorm();
      const double floor =
          static_cast<double>(n) * kEps * raw.col(j).cwiseAbs().maxCoeff();
      if (ss <= floor * floor)
        throw DataError(ErrorCode::ZeroVarianceColumn,
                        "matrix-core: zero-variance column " +
                            std::to_string(j) + " (" + dm.column_names[j] +
                            ")");
      const double sd = std::sqrt(ss / static_cast<double>(n - 1));
      dm.column_scales(j) = sd;
      dm.values.col(j) /= sd;
    }
  }
  return dm;
}

CrossProduct cross_product(const DataMatrix& x) {
  Matrix s = x.values.transpose() * x.values;
  s = 0.5 * (s + s.transpose()).eval();
  return {std::move(s)};
}

void fix_signs(Matrix& v, Matrix* u) {
  for (Index j = 0; j < v.cols(); ++j) {
    Index arg = 0;
    double best = -1.0;
    for (Index i = 0; i < v.rows(); ++i) {
      if (std::abs(v(i, j)) > best) {
        best = std::abs(v(i, j));
        arg = i;
      }
    }
    if (v.rows() > 0 && v(arg, j) < 0.0) {
      v.col(j) *= -1.0;
      if (u != nullptr && j < u->cols()) u->col(j) *= -1.0;
    }
  }
}

Svd svd(const Matrix& x) {
  Svd out;
  const Index n = x.rows();
  const Index p = x.cols();
  if (n == 0 || p == 0) {
    out.u = Matrix(n, 0);
    out.v = Matrix(p, 0);
    return out;
  }
  Eigen::JacobiSVD<Matrix> dec(x, Eigen::ComputeThinU | Eigen::ComputeThinV);
  const Vector& s = dec.singularValues();
  const double cutoff =
      static_cast<double>(std::max(n, p)) * kEps * (s.size() ? s(0) : 0.0);
  Index r = 0;
  while (r < s.size() && s(r) > cutoff && s(r) > 0.0) ++r;
  out.lambda = s.head(r);
  out.u = dec.matrixU().leftCols(r);
  out.v = dec.matrixV().leftCols(r);
  fix_signs(out.v, &out.u);
  return out;
}

Matrix solve_ls(const Matrix& a, const Matrix& b) {
  const Index n = a.rows();
  const Index k = a.cols();
  if (n == 0 || k == 0) return Matrix::Zero(k, b.cols());
  Eigen::JacobiSVD<Matrix> dec(a, Eigen::ComputeThinU | Eigen::ComputeThinV);
  const Vector& s = dec.singularValues();
  const double cutoff = static_cast<double>(std::max(n, k)) * kEps * s(0);
  Vector inv = Vector::Zero(s.size());
  for (Index i = 0; i < s.size(); ++i)
    if (s(i) > cutoff && s(i) > 0.0) inv(i) = 1.0 / s(i);
  return dec.matrixV() * inv.asDiagonal() * (dec.matrixU().transpose() * b);
}

Vector solve_ls(const Matrix& a, const Vector& b) {
  Matrix coef = solve_ls(a, Matrix(b));
  return coef.col(0);
}

double r_squared(const Matrix& a, const Vector& b) {
  const double tss = b.squaredNorm();
  if (tss == 0.0)
    throw NumericalError(ErrorCode::ZeroTarget,
                         "matrix-core: regression target is identically zero");
  if (a.cols() == 0) return 0.0;
  const Vector resid = b - a * solve_ls(a, b);
  return 1.0 - resid.squaredNorm() / tss;
}

std::vector<double> vif(const DataMatrix& x, const IndexList& subset) {
  if (subset.empty())
    throw ConfigError("matrix-core: vif needs a non-empty subset");
  return kernels::omp::vif(x.values, subset);
}

std::vector<double> vif(const DataMatrix& x) {
  return vif(x, all_indices(x.p()));
}

std::vector<double> pairwise_abs_correlations(const DataMatrix& x,
                                              const IndexList& subset) {
  if (subset.size() < 2)
    throw ConfigError(
        "matrix-core: pairwise correlations need at least 2 columns");
  for (Index j : subset) {
    const Vector c = x.values.col(j).array() - x.values.col(j).mean();
    if (c.squaredNorm() == 0.0)
      throw DataError(ErrorCode::ZeroVarianceColumn,
                      "matrix-core: zero-variance column " +
                          std::to_string(j));
  }
  return kernels::omp::abs_corr_pairs(x.values, subset);
}

double correlation(const Vector& a, const Vector& b) {
  const Vector ac = a.array() - a.mean();
  const Vector bc = b.array() - b.mean();
  const double den = std::sqrt(ac.squaredNorm() * bc.squaredNorm());
  if (den == 0.0)
    throw NumericalError(ErrorCode::ZeroComponent,
                         "matrix-core: correlation of a constant vector");
  return ac.dot(bc) / den;
}

IndexList all_indices(Index p) {
  IndexList idx(static_cast<std::size_t>(p));
  for (Index j = 0; j < p; ++j) idx[static_cast<std::size_t>(j)] = j;
  return idx;
}

}  // namespace simpca
