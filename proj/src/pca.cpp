#include "simpca/pca.hpp"

#include "simpca/error.hpp"

#include <cmath>
#include <string>

namespace simpca {

PcaModel fit_pca(const Matrix& x, Index d) {
  if (d < 1) throw ConfigError("pca: component count must be >= 1");
  Svd s = svd(x);
  if (d > s.rank())
    throw NumericalError(ErrorCode::RankExceeded,
                         "pca: requested " + std::to_string(d) +
                             " components but rank is " +
                             std::to_string(s.rank()));
  PcaModel m;
  m.rank = s.rank();
  m.v = s.v.leftCols(d);
  m.lambda = s.lambda.head(d);
  m.scores = x * m.v;
  m.vexp = m.lambda.array().square();
  m.total_variance = x.squaredNorm();
  return m;
}

PcaModel fit_pca(const DataMatrix& x, Index d) { return fit_pca(x.values, d); }

double vexp_of_component(const Matrix& x, const Vector& t) {
  const double tt = t.squaredNorm();
  if (tt == 0.0)
    throw NumericalError(ErrorCode::ZeroComponent,
                         "pca: vexp of an all-zero component");
  return (x.transpose() * t).squaredNorm() / tt;
}

double extra_vexp(const Matrix& q, const Vector& t) {
  if (t.squaredNorm() == 0.0)
    throw NumericalError(ErrorCode::ZeroComponent,
                         "pca: extra vexp of an all-zero component");
  const Vector pt = q * solve_ls(q, t);
  const double den = pt.squaredNorm();
  const double num = (q.transpose() * t).squaredNorm();
  // Residual below rounding level: t lies in the span already accounted for.
  if (den <= 1e-24 * t.squaredNorm() || num == 0.0) return 0.0;
  return num / den;
}

Matrix deflate(const Matrix& x, const Vector& t) {
  const double tt = t.squaredNorm();
  if (tt == 0.0)
    throw NumericalError(ErrorCode::ZeroComponent,
                         "pca: cannot deflate by an all-zero component");
  return x - t * ((t.transpose() * x) / tt);
}

double lm_norm(const Vector& a, double m) {
  if (m == CoefficientScaling::kInfNorm) return a.cwiseAbs().maxCoeff();
  if (m == 1.0) return a.cwiseAbs().sum();
  if (m == 2.0) return a.norm();
  if (!(m > 0.0)) throw ConfigError("pca: norm order must be positive or inf");
  return std::pow(a.cwiseAbs().array().pow(m).sum(), 1.0 / m);
}

Matrix rescale_coefficients(const Matrix& v, const CoefficientScaling& scaling,
                            const Vector& lambda) {
  Matrix out = v;
  for (Index j = 0; j < v.cols(); ++j) {
    if (v.col(j).cwiseAbs().maxCoeff() == 0.0)
      throw NumericalError(ErrorCode::ZeroColumn,
                           "pca: coefficient column " + std::to_string(j) +
                               " is all zero");
    double div = 1.0;
    switch (scaling.mode) {
      case CoefficientScaling::Mode::UnitL2:
        div = v.col(j).norm();
        break;
      case CoefficientScaling::Mode::ComponentUnitNorm:
        if (lambda.size() <= j || !(lambda(j) > 0.0))
          throw ConfigError("pca: component-unit-norm scaling needs a positive "
                            "singular value per column");
        div = lambda(j);
        break;
      case CoefficientScaling::Mode::CustomNorm:
        div = lm_norm(v.col(j), scaling.norm_order);
        break;
    }
    out.col(j) /= div;
  }
  return out;
}

}  // namespace simpca
