#include "simpca/sparse.hpp"

#include "simpca/error.hpp"

#include <cmath>
#include <limits>
#include <sstream>

namespace simpca {

namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();

std::string list(const IndexList& s) {
  std::ostringstream os;
  for (std::size_t k = 0; k < s.size(); ++k) os << (k ? "," : "") << s[k];
  return os.str();
}

void check_support(const DataMatrix& x, const IndexList& support) {
  if (support.empty())
    throw NumericalError(ErrorCode::EmptySupport, "sparse: empty support");
  for (Index i : support)
    if (i < 0 || i >= x.p())
      throw ConfigError("sparse: support index " + std::to_string(i) +
                        " out of range");
}

void finish(const DataMatrix& x, const Matrix& q, SparseComponent& c) {
  if (c.scores.squaredNorm() == 0.0)
    throw NumericalError(ErrorCode::ZeroComponent,
                         "sparse: component scores vanish on support {" +
                             list(c.support.indices) + "}");
  c.vexp = vexp_of_component(x.values, c.scores);
  c.extra_vexp = extra_vexp(q, c.scores);
  c.contributions = contributions(c.coefficients);
}

// Unit-L2 coefficients with the largest-|value| entry positive.
Vector canonical(Vector a) {
  a.normalize();
  Matrix m = a;
  fix_signs(m);
  return m.col(0);
}

// Leading eigenpair of num against den, maximized over the range of den
// (`gram` is X_s'X_s in the same coordinates and sets the tolerance).
// Directions in the null space
// of den but not of gram have scores inside the span of earlier components
// and carry no extra variance.
void check_collinear(const Matrix& gram, const IndexList& support) {
  Eigen::SelfAdjointEigenSolver<Matrix> eg(gram, Eigen::EigenvaluesOnly);
  const double tol = static_cast<double>(gram.rows()) * kEps *
                     std::max(gram.diagonal().maxCoeff(), 0.0);
  if (eg.info() != Eigen::Success || !(eg.eigenvalues()(0) > tol))
    throw NumericalError(ErrorCode::SingularSubset,
                         "sparse: collinear support columns {" + list(support) +
                             "}");
}

Vector leading_generalized(const Matrix& num, const Matrix& den,
                           const Matrix& gram, const IndexList& support) {
  const Index k = den.rows();
  const double kk = static_cast<double>(k);
  Eigen::SelfAdjointEigenSolver<Matrix> ed(den);
  const double tol = kk * kEps * std::max(gram.diagonal().maxCoeff(), 0.0);
  Index first = 0;
  while (first < k && !(ed.eigenvalues()(first) > tol)) ++first;
  if (first == k)
    throw NumericalError(ErrorCode::SingularSubset,
                         "sparse: support columns {" + list(support) +
                             "} have no variance left after deflation");
  const Index r = k - first;
  const Matrix w = ed.eigenvectors().rightCols(r) *
                   ed.eigenvalues().tail(r).cwiseSqrt().cwiseInverse().asDiagonal();
  Matrix m = w.transpose() * num * w;
  m = 0.5 * (m + m.transpose()).eval();
  Eigen::SelfAdjointEigenSolver<Matrix> em(m);
  return w * em.eigenvectors().col(r - 1);
}

}  // namespace

std::string to_string(SparseMethod method) {
  switch (method) {
    case SparseMethod::Pspca: return "pspca";
    case SparseMethod::Cspca: return "cspca";
    case SparseMethod::Uspca: return "uspca";
    case SparseMethod::PlainThreshold: return "plain";
  }
  return "unknown";
}

Vector SparseComponent::full_coefficients(Index p) const {
  Vector out = Vector::Zero(p);
  for (std::size_t k = 0; k < support.indices.size(); ++k)
    out(support.indices[k]) = coefficients(static_cast<Index>(k));
  return out;
}

std::vector<double> contributions(const Vector& coefficients) {
  const double l1 = coefficients.cwiseAbs().sum();
  if (l1 == 0.0)
    throw NumericalError(ErrorCode::ZeroComponent,
                         "sparse: contributions of an all-zero coefficient vector");
  std::vector<double> out(static_cast<std::size_t>(coefficients.size()));
  for (Index i = 0; i < coefficients.size(); ++i)
    out[static_cast<std::size_t>(i)] = 100.0 * coefficients(i) / l1;
  return out;
}

SparseComponent project_component(const DataMatrix& x, const IndexList& support,
                                  const Vector& target) {
  return project_component(x, x.values, support, target);
}

SparseComponent project_component(const DataMatrix& x, const Matrix& q,
                                  const IndexList& support,
                                  const Vector& target) {
  check_support(x, support);
  if (target.squaredNorm() == 0.0)
    throw NumericalError(ErrorCode::ZeroTarget, "sparse: target is all zero");
  SparseComponent c;
  c.method = SparseMethod::Pspca;
  c.support.indices = support;
  const Matrix xs = x.columns(support);
  c.coefficients = solve_ls(xs, target);
  c.scores = xs * c.coefficients;
  const double r2 = 1.0 - (target - c.scores).squaredNorm() / target.squaredNorm();
  c.support.r2 = r2;
  c.r2_vs_target = r2;
  finish(x, q, c);
  return c;
}

SparseComponent cspca_component(const DataMatrix& x, const Matrix& q,
                                const IndexList& support) {
  return uspca_component(x, q, support, Matrix(x.n(), 0));
}

SparseComponent uspca_component(const DataMatrix& x, const Matrix& q,
                                const IndexList& support,
                                const Matrix& previous_scores) {
  check_support(x, support);
  Matrix qs(q.rows(), static_cast<Index>(support.size()));
  for (std::size_t k = 0; k < support.size(); ++k)
    qs.col(static_cast<Index>(k)) = q.col(support[k]);
  const Matrix qtq = q.transpose() * qs;
  const Matrix num = qtq.transpose() * qtq;
  const Matrix den = qs.transpose() * qs;
  const Matrix xs = x.columns(support);
  const Index s = xs.cols();

  const Matrix gram = xs.transpose() * xs;
  check_collinear(gram, support);
  Vector a;
  if (previous_scores.cols() == 0) {
    a = leading_generalized(num, den, gram, support);
  } else {
    const Matrix cons = previous_scores.transpose() * xs;  // k x s
    Eigen::JacobiSVD<Matrix> dec(cons, Eigen::ComputeFullV);
    const Vector& sv = dec.singularValues();
    const double cut = sv.size() ? static_cast<double>(std::max(cons.rows(), s)) *
                                       kEps * sv(0)
                                 : 0.0;
    Index r = 0;
    while (r < sv.size() && sv(r) > cut && sv(r) > 0.0) ++r;
    if (r >= s)
      throw NumericalError(ErrorCode::InfeasibleOrthogonality,
                           "sparse: support {" + list(support) +
                               "} cannot give scores orthogonal to " +
                               std::to_string(previous_scores.cols()) +
                               " earlier components");
    const Matrix ns = dec.matrixV().rightCols(s - r);
    a = ns * leading_generalized(ns.transpose() * num * ns,
                                 ns.transpose() * den * ns,
                                 ns.transpose() * gram * ns, support);
  }

  SparseComponent c;
  c.method =
      previous_scores.cols() > 0 ? SparseMethod::Uspca : SparseMethod::Cspca;
  c.support.indices = support;
  c.coefficients = canonical(a);
  c.scores = xs * c.coefficients;
  finish(x, q, c);
  return c;
}

SparseComponent plain_threshold_component(const DataMatrix& x, const Matrix& q,
                                          const Vector& coefficients,
                                          const IndexList& support) {
  check_support(x, support);
  if (coefficients.size() != x.p())
    throw ConfigError("sparse: coefficient length does not match columns");
  Vector a(static_cast<Index>(support.size()));
  for (std::size_t k = 0; k < support.size(); ++k)
    a(static_cast<Index>(k)) = coefficients(support[k]);
  if (a.norm() == 0.0)
    throw NumericalError(ErrorCode::ZeroComponent,
                         "sparse: thresholded coefficients are all zero");
  SparseComponent c;
  c.method = SparseMethod::PlainThreshold;
  c.support.indices = support;
  c.coefficients = a / a.norm();
  c.scores = x.columns(support) * c.coefficients;
  finish(x, q, c);
  return c;
}

SparseComponent plain_threshold_component(const DataMatrix& x,
                                          const Vector& coefficients, double t,
                                          double norm_order) {
  const SupportSet s = threshold_support(coefficients, t, norm_order);
  SparseComponent c = plain_threshold_component(x, x.values, coefficients, s.indices);
  c.support.threshold = s.threshold;
  return c;
}

Matrix component_correlations(const Matrix& scores) {
  const Index k = scores.cols();
  Matrix r = Matrix::Identity(k, k);
  for (Index i = 0; i < k; ++i)
    for (Index j = i + 1; j < k; ++j)
      r(i, j) = r(j, i) = correlation(scores.col(i), scores.col(j));
  return r;
}

Matrix component_correlations(const std::vector<SparseComponent>& components) {
  if (components.empty()) return Matrix(0, 0);
  Matrix s(components.front().scores.size(),
           static_cast<Index>(components.size()));
  for (std::size_t k = 0; k < components.size(); ++k)
    s.col(static_cast<Index>(k)) = components[k].scores;
  return component_correlations(s);
}

void SimpcaConfig::validate(Index rank) const {
  if (nr < 1) throw ConfigError("sparse: nr must be >= 1");
  if (nd < 0 || nd > nr) throw ConfigError("sparse: need 0 <= nd <= nr");
  if (nr > rank)
    throw NumericalError(ErrorCode::RankExceeded,
                         "sparse: nr = " + std::to_string(nr) +
                             " exceeds the data rank " + std::to_string(rank));
  criterion.validate();
  selection.validate();
  if (rotation.restarts < 1 || rotation.max_sweeps < 1 || !(rotation.tol > 0.0))
    throw ConfigError("sparse: rotation needs restarts, max_sweeps >= 1, tol > 0");
}

namespace {

struct Targets {
  Matrix b;        // p x k rotated coefficients
  RotationResult rotation;
};

Targets rotated_targets(const Matrix& data, Index k, const SimpcaConfig& cfg,
                        PcaModel* model_out) {
  PcaModel m = fit_pca(data, k);
  const Matrix a = rescale_coefficients(m.v, cfg.coefficient_scaling, m.lambda);
  Targets t;
  if (k >= 2) {
    // After deflation a variable that was fully absorbed leaves a row at
    // rounding level; Kaiser would blow it up to unit length, so the angle
    // is computed from the remaining rows only.
    IndexList live;
    const Vector rn = a.rowwise().norm();
    for (Index i = 0; i < a.rows(); ++i)
      if (rn(i) > 1e-10 * rn.maxCoeff()) live.push_back(i);
    if (cfg.rotation.kaiser && static_cast<Index>(live.size()) < a.rows() &&
        static_cast<Index>(live.size()) >= k) {
      Matrix sub(static_cast<Index>(live.size()), k);
      for (std::size_t r = 0; r < live.size(); ++r)
        sub.row(static_cast<Index>(r)) = a.row(live[r]);
      t.rotation = rotate(sub, cfg.criterion, cfg.rotation);
      t.rotation.b = a * t.rotation.o;
    } else {
      t.rotation = rotate(a, cfg.criterion, cfg.rotation);
    }
    canonicalize_rotation(data, t.rotation);
  } else {
    t.rotation.b = a;
    t.rotation.o = Matrix::Identity(k, k);
    t.rotation.converged = true;
    t.rotation.kaiser = cfg.rotation.kaiser;
  }
  t.b = t.rotation.b;
  if (model_out) *model_out = std::move(m);
  return t;
}

double joint_vexp(const Matrix& x, const Matrix& t) {
  const Matrix proj = t * solve_ls(t, x);
  return proj.squaredNorm();
}

}  // namespace

SimpcaResult run_simpca(const DataMatrix& x, const SimpcaConfig& config) {
  const Index rank = svd(x.values).rank();
  config.validate(rank);

  SimpcaResult res;
  const Targets first = rotated_targets(x.values, config.nr, config, &res.pca);
  res.rotation = first.rotation;

  Matrix q = x.values;
  Matrix accepted(x.n(), 0);  // orthogonalized accepted scores
  Matrix prev(x.n(), 0);      // raw accepted scores
  Matrix target_scores(x.n(), 0);
  double cv = 0.0;

  for (Index j = 0; j < config.nd; ++j) {
    try {
      Vector b;
      Vector t;
      if (config.deflate && j > 0) {
        const Index rq = svd(q).rank();
        if (rq == 0)
          throw NumericalError(ErrorCode::ZeroComponent,
                               "sparse: nothing left to explain");
        const Targets tq = rotated_targets(q, std::min(config.nr, rq), config,
                                           nullptr);
        b = tq.b.col(0);
        t = q * b;
      } else {
        b = first.b.col(j);
        t = x.values * b;
      }

      SupportSet sel = select_support(x, t, b, config.selection, &q);
      SparseComponent c;
      switch (config.method) {
        case SparseMethod::Pspca:
          c = project_component(x, q, sel.indices, t);
          break;
        case SparseMethod::Cspca:
          c = cspca_component(x, q, sel.indices);
          break;
        case SparseMethod::Uspca:
          c = uspca_component(x, q, sel.indices, prev);
          break;
        case SparseMethod::PlainThreshold:
          c = plain_threshold_component(x, q, b, sel.indices);
          break;
      }
      c.method = config.method;
      const double corr = correlation(c.scores, t);
      if (config.method != SparseMethod::Pspca) c.r2_vs_target = corr * corr;
      if (!sel.r2) sel.r2 = c.support.r2 ? c.support.r2 : c.r2_vs_target;
      c.support = std::move(sel);

      RotatedTarget rt;
      rt.coefficients = b;
      rt.scores = t;
      rt.vexp = vexp_of_component(x.values, t);

      target_scores.conservativeResize(Eigen::NoChange, j + 1);
      target_scores.col(j) = t;
      cv += c.extra_vexp;
      const double tcv = joint_vexp(x.values, target_scores);
      res.cvexp.push_back(cv);
      res.target_cvexp.push_back(tcv);
      res.rcvexp.push_back(tcv > 0.0 ? cv / tcv : 0.0);

      Vector r = c.scores;
      if (accepted.cols() > 0) r -= accepted * solve_ls(accepted, r);
      if (r.squaredNorm() > 1e-24 * c.scores.squaredNorm()) {
        q -= r * ((r.transpose() * q) / r.squaredNorm());
        accepted.conservativeResize(Eigen::NoChange, accepted.cols() + 1);
        accepted.col(accepted.cols() - 1) = r;
      }
      prev.conservativeResize(Eigen::NoChange, prev.cols() + 1);
      prev.col(prev.cols() - 1) = c.scores;

      res.components.push_back(std::move(c));
      res.targets.push_back(std::move(rt));
    } catch (const Error& e) {
      throw Error(e.kind(), e.code(),
                  "component " + std::to_string(j + 1) + ": " + e.what());
    }
  }
  return res;
}

}  // namespace simpca
