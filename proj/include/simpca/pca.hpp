#pragma once

#include "simpca/matrix_core.hpp"

namespace simpca {

/// Principal components of a centered data matrix.
///
/// `v` has unit-L2 columns with the largest-|value| entry positive, `scores`
/// is X V (column j has norm lambda_j), and `vexp` holds lambda_j^2, the
/// variance explained in units of the total variance trace(X'X).
struct PcaModel {
  Matrix v;
  Vector lambda;
  Matrix scores;
  Vector vexp;
  double total_variance = 0.0;
  Index rank = 0;

  Index d() const { return v.cols(); }
};

/// Fits the first `d` components. Throws RankExceeded when d > rank(X).
PcaModel fit_pca(const DataMatrix& x, Index d);
PcaModel fit_pca(const Matrix& x, Index d);

/// vexp(t) = |t (t't)^-1 t' X|^2 = sum_i (t'x_i)^2 / t't.
double vexp_of_component(const Matrix& x, const Vector& t);
inline double vexp_of_component(const DataMatrix& x, const Vector& t) {
  return vexp_of_component(x.values, t);
}

/// Extra variance explained by `t` given the orthocomplement `q` of the
/// previously accepted components (q = X for the first component):
///   |Q't|^2 / |P_Q t|^2
/// where P_Q projects onto the column space of Q. For t in col(X), P_Q t is
/// t with its component along the earlier scores removed. Returns 0 when
/// that residual vanishes.
double extra_vexp(const Matrix& q, const Vector& t);

/// Q = X - t (t't)^-1 t'X.
Matrix deflate(const Matrix& x, const Vector& t);
inline Matrix deflate(const DataMatrix& x, const Vector& t) {
  return deflate(x.values, t);
}

/// How coefficient columns are normalized.
struct CoefficientScaling {
  enum class Mode { UnitL2, ComponentUnitNorm, CustomNorm };
  /// Order of the L_m norm for CustomNorm. Use `kInfNorm` for L_inf.
  static constexpr double kInfNorm = -1.0;

  Mode mode = Mode::UnitL2;
  double norm_order = 2.0;

  static CoefficientScaling unit_l2() { return {Mode::UnitL2, 2.0}; }
  /// Columns divided by lambda_j, giving equal-norm components.
  static CoefficientScaling component_unit_norm() {
    return {Mode::ComponentUnitNorm, 2.0};
  }
  static CoefficientScaling norm(double m) { return {Mode::CustomNorm, m}; }
};

/// L_m norm of a vector; m = CoefficientScaling::kInfNorm for L_inf.
double lm_norm(const Vector& a, double m);

/// Rescales each column by a positive scalar. `lambda` is only read in
/// ComponentUnitNorm mode. Throws ZeroColumn on an all-zero column.
Matrix rescale_coefficients(const Matrix& v, const CoefficientScaling& scaling,
                            const Vector& lambda = Vector());

}  // namespace simpca
