#include "simpca/rotation.hpp"

#include "simpca/error.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>
#include <sstream>

namespace simpca {

void RotationCriterion::validate() const {
  if (family == Family::Orthomax) {
    if (!(parameter >= 0.0) || !std::isfinite(parameter))
      throw ConfigError("rotation: orthomax parameter c must be >= 0");
  } else if (!(parameter >= 0.0 && parameter <= 1.0)) {
    throw ConfigError("rotation: kappa must lie in [0, 1]");
  }
}

std::string RotationCriterion::name() const {
  std::ostringstream os;
  if (family == Family::CrawfordFerguson) {
    os << "cf(kappa=" << parameter << ")";
  } else if (parameter == 0.0) {
    os << "quartimax";
  } else if (parameter == 1.0) {
    os << "varimax";
  } else {
    os << "orthomax(c=" << parameter << ")";
  }
  return os.str();
}

double cf_value(const Matrix& b, double kappa) {
  const Matrix sq = b.array().square();
  const double quart = sq.array().square().sum();
  const double rows = sq.rowwise().sum().squaredNorm();
  const double cols = sq.colwise().sum().squaredNorm();
  return (1.0 - kappa) * (rows - quart) + kappa * (cols - quart);
}

double orthomax_value(const Matrix& b, double c) {
  const Matrix sq = b.array().square();
  const double p = static_cast<double>(b.rows());
  return p * sq.array().square().sum() + c * sq.colwise().sum().squaredNorm();
}

double criterion_value(const Matrix& b, const RotationCriterion& criterion) {
  if (criterion.family == RotationCriterion::Family::CrawfordFerguson)
    return cf_value(b, criterion.parameter);
  return orthomax_value(b, -criterion.parameter);
}

namespace {

bool lower_is_better(const RotationCriterion& c) {
  return c.family == RotationCriterion::Family::CrawfordFerguson;
}

// Two-column restriction of  sum b^4 - w sum_j (colss_j)^2.
double plane_objective(const Vector& x, const Vector& y, double w) {
  const double sx = x.squaredNorm();
  const double sy = y.squaredNorm();
  return x.array().pow(4).sum() + y.array().pow(4).sum() -
         w * (sx * sx + sy * sy);
}

struct Run {
  Matrix b;
  Matrix o;
  std::vector<double> trace;
  bool converged = false;
  int sweeps = 0;
};

Run run_sweeps(Matrix b, Matrix o, const RotationCriterion& criterion,
               const RotationOptions& opt) {
  const Index p = b.rows();
  const Index d = b.cols();
  const double w = criterion.family == RotationCriterion::Family::Orthomax
                       ? criterion.parameter / static_cast<double>(p)
                       : criterion.parameter;
  Run r;
  double f = criterion_value(b, criterion);
  r.trace.push_back(f);
  for (int sweep = 0; sweep < opt.max_sweeps; ++sweep) {
    for (Index i = 0; i < d - 1; ++i) {
      for (Index j = i + 1; j < d; ++j) {
        const Vector x = b.col(i);
        const Vector y = b.col(j);
        const Vector u = x.array().square() - y.array().square();
        const Vector v = 2.0 * x.array() * y.array();
        const double sa = u.sum();
        const double sb = v.sum();
        const double sc = (u.array().square() - v.array().square()).sum();
        const double sd = 2.0 * (u.array() * v.array()).sum();
        const double phi =
            0.25 * std::atan2(sd - 2.0 * w * sa * sb, sc - w * (sa * sa - sb * sb));
        if (phi == 0.0) continue;
        const double c = std::cos(phi);
        const double s = std::sin(phi);
        const Vector nx = c * x + s * y;
        const Vector ny = -s * x + c * y;
        if (plane_objective(nx, ny, w) < plane_objective(x, y, w)) continue;
        b.col(i) = nx;
        b.col(j) = ny;
        const Vector ox = o.col(i);
        const Vector oy = o.col(j);
        o.col(i) = c * ox + s * oy;
        o.col(j) = -s * ox + c * oy;
      }
    }
    const double next = criterion_value(b, criterion);
    r.trace.push_back(next);
    r.sweeps = sweep + 1;
    const double scale = std::max(std::abs(f), 1e-300);
    const double change = std::abs(next - f) / scale;
    f = next;
    if (change < opt.tol) {
      r.converged = true;
      break;
    }
  }
  r.b = std::move(b);
  r.o = std::move(o);
  return r;
}

Matrix random_orthogonal(Index d, std::uint64_t seed, int restart) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed & 0xffffffffu),
                    static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(restart)};
  std::mt19937_64 gen(seq);
  std::normal_distribution<double> dist;
  Matrix g(d, d);
  for (Index j = 0; j < d; ++j)
    for (Index i = 0; i < d; ++i) g(i, j) = dist(gen);
  Eigen::HouseholderQR<Matrix> qr(g);
  Matrix q = qr.householderQ();
  const Matrix r = qr.matrixQR().triangularView<Eigen::Upper>();
  for (Index j = 0; j < d; ++j)
    if (r(j, j) < 0.0) q.col(j) *= -1.0;
  return q;
}

}  // namespace

RotationResult rotate(const Matrix& a, const RotationCriterion& criterion,
                      const RotationOptions& options) {
  criterion.validate();
  const Index p = a.rows();
  const Index d = a.cols();
  if (d < 2 || p < d)
    throw ConfigError("rotation: need p >= d >= 2, got " + std::to_string(p) +
                      "x" + std::to_string(d));
  if (options.restarts < 1 || options.max_sweeps < 1 || !(options.tol > 0.0))
    throw ConfigError("rotation: restarts and max_sweeps must be >= 1, tol > 0");

  Vector h = Vector::Ones(p);
  Matrix work = a;
  if (options.kaiser) {
    h = a.rowwise().norm();
    for (Index i = 0; i < p; ++i) {
      if (h(i) == 0.0)
        throw NumericalError(ErrorCode::ZeroRow,
                             "rotation: Kaiser normalization of zero row " +
                                 std::to_string(i));
      work.row(i) /= h(i);
    }
  }

  const bool lower = lower_is_better(criterion);
  Run best;
  int best_index = -1;
  for (int r = 0; r < options.restarts; ++r) {
    const Matrix o0 = r == 0 ? Matrix::Identity(d, d)
                             : random_orthogonal(d, options.seed, r);
    Run run = run_sweeps(work * o0, o0, criterion, options);
    const double v = run.trace.back();
    const bool better =
        best_index < 0 || (lower ? v < best.trace.back() : v > best.trace.back());
    if (better) {
      best = std::move(run);
      best_index = r;
    }
  }

  RotationResult out;
  out.o = std::move(best.o);
  out.b = a * out.o;
  out.criterion_trace = std::move(best.trace);
  out.kaiser = options.kaiser;
  out.converged = best.converged;
  out.sweeps_used = best.sweeps;
  out.restart_used = best_index;
  return out;
}

Matrix rotated_scores(const Matrix& x, const Matrix& v, const Matrix& o) {
  return x * (v * o);
}

void canonicalize_rotation(const Matrix& x, RotationResult& result) {
  const Index d = result.b.cols();
  const Matrix scores = x * result.b;
  std::vector<double> vx(static_cast<std::size_t>(d));
  for (Index j = 0; j < d; ++j) {
    const double tt = scores.col(j).squaredNorm();
    vx[static_cast<std::size_t>(j)] =
        tt == 0.0 ? 0.0 : (x.transpose() * scores.col(j)).squaredNorm() / tt;
  }
  std::vector<Index> order(static_cast<std::size_t>(d));
  std::iota(order.begin(), order.end(), Index{0});
  std::stable_sort(order.begin(), order.end(), [&](Index l, Index r) {
    return vx[static_cast<std::size_t>(l)] > vx[static_cast<std::size_t>(r)];
  });
  Matrix b(result.b.rows(), d);
  Matrix o(result.o.rows(), d);
  for (Index k = 0; k < d; ++k) {
    b.col(k) = result.b.col(order[static_cast<std::size_t>(k)]);
    o.col(k) = result.o.col(order[static_cast<std::size_t>(k)]);
  }
  fix_signs(b, &o);
  result.b = std::move(b);
  result.o = std::move(o);
}

}  // namespace simpca
