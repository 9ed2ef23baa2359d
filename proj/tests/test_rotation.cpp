#include "simpca/error.hpp"
#include "simpca/pca.hpp"
#include "simpca/rotation.hpp"
#include "support.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

using namespace simpca;
using simpca::testing::gaussian;

namespace {

double naive_cf(const Matrix& b, double kappa) {
  double row = 0.0, col = 0.0;
  for (Index i = 0; i < b.rows(); ++i)
    for (Index j = 0; j < b.cols(); ++j)
      for (Index l = 0; l < b.cols(); ++l)
        if (l != j) row += b(i, j) * b(i, j) * b(i, l) * b(i, l);
  for (Index j = 0; j < b.cols(); ++j)
    for (Index i = 0; i < b.rows(); ++i)
      for (Index l = 0; l < b.rows(); ++l)
        if (l != i) col += b(i, j) * b(i, j) * b(l, j) * b(l, j);
  return (1.0 - kappa) * row + kappa * col;
}

double naive_orthomax(const Matrix& b, double c) {
  double q = 0.0, s = 0.0;
  for (Index j = 0; j < b.cols(); ++j) {
    double cs = 0.0;
    for (Index i = 0; i < b.rows(); ++i) {
      q += std::pow(b(i, j), 4);
      cs += b(i, j) * b(i, j);
    }
    s += cs * cs;
  }
  return static_cast<double>(b.rows()) * q + c * s;
}

double quartimax(const Matrix& b) { return b.array().pow(4).sum(); }

void expect_invariants(const Matrix& a, const RotationResult& r,
                       const RotationCriterion& c) {
  const Index d = a.cols();
  EXPECT_LE((r.o.transpose() * r.o - Matrix::Identity(d, d)).norm(), 1e-8);
  EXPECT_LE((r.b - a * r.o).norm(), 1e-10 * std::max(1.0, a.norm()));
  EXPECT_NEAR(r.b.norm(), a.norm(), 1e-8 * std::max(1.0, a.norm()));
  EXPECT_LE((r.b.rowwise().norm() - a.rowwise().norm()).cwiseAbs().maxCoeff(), 1e-8);
  const bool lower = c.family == RotationCriterion::Family::CrawfordFerguson;
  for (std::size_t k = 1; k < r.criterion_trace.size(); ++k) {
    const double prev = r.criterion_trace[k - 1], cur = r.criterion_trace[k];
    const double slack = 1e-12 * std::max(1.0, std::abs(prev));
    if (lower)
      EXPECT_LE(cur, prev + slack);
    else
      EXPECT_GE(cur, prev - slack);
  }
}

}  // namespace

TEST(CfValue, SimpleStructureIsZero) {
  Matrix b(3, 3);
  b << 0.5, 0, 0, 0, -2, 0, 0, 0, 1.5;
  for (double k : {0.0, 0.3, 1.0}) EXPECT_EQ(cf_value(b, k), 0.0);
}

TEST(CfValue, EqualEntries) {
  const double a = 0.7;
  const Matrix b = Matrix::Constant(2, 2, a);
  for (double k : {0.0, 0.25, 1.0}) {
    EXPECT_NEAR(cf_value(b, k), 4.0 * std::pow(a, 4), 1e-14);
    EXPECT_NEAR(naive_cf(b, k), 4.0 * std::pow(a, 4), 1e-14);
  }
}

TEST(CfValue, NaiveLoopOracle) {
  std::mt19937_64 gen(1);
  for (double k : {0.0, 0.3, 1.0}) {
    const Matrix b = gaussian(5, 3, gen);
    EXPECT_LE(simpca::testing::rel(cf_value(b, k), naive_cf(b, k)), 1e-12);
    EXPECT_GE(cf_value(b, k), 0.0);
  }
}

TEST(OrthomaxValue, ZeroAndNaiveOracle) {
  EXPECT_EQ(orthomax_value(Matrix::Zero(4, 2), 1.0), 0.0);
  std::mt19937_64 gen(2);
  const Matrix b = gaussian(4, 2, gen);
  EXPECT_LE(simpca::testing::rel(orthomax_value(b, 1.0), naive_orthomax(b, 1.0)), 1e-12);
}

TEST(OrthomaxValue, EqualColumnSumsOfSquares) {
  std::mt19937_64 gen(3);
  const Index p = 6, d = 3;
  const double g = 2.0;
  const Matrix b = std::sqrt(g) * simpca::testing::random_orthonormal(p, d, gen);
  for (double kappa : {0.0, 0.5, 1.0}) {
    const double c = p * kappa;
    EXPECT_NEAR(orthomax_value(b, c) - c * d * g * g, p * quartimax(b), 1e-10);
  }
}

TEST(Rotate, SimpleStructureIsAFixedPoint) {
  Matrix a(4, 2);
  a << 0.9, 0, 0.5, 0, 0, -0.7, 0, 0.3;
  for (auto c : {RotationCriterion::varimax(), RotationCriterion::quartimax(),
                 RotationCriterion::crawford_ferguson(0.5)}) {
    const RotationResult r = rotate(a, c);
    EXPECT_LE((r.o.cwiseAbs() - Matrix::Identity(2, 2)).norm(), 1e-10);
    EXPECT_NEAR(r.criterion_trace.front(), r.criterion_trace.back(), 1e-12);
    EXPECT_TRUE(r.converged);
  }
}

TEST(Rotate, TwoColumnAngleMatchesGridSearch) {
  std::mt19937_64 gen(4);
  const double pi = std::numbers::pi;
  for (int rep = 0; rep < 10; ++rep) {
    const Matrix a = gaussian(6, 2, gen);
    for (auto c : {RotationCriterion::varimax(), RotationCriterion::crawford_ferguson(0.3)}) {
      const RotationResult r = rotate(a, c);
      const double got = std::atan2(r.o(1, 0), r.o(0, 0));
      const bool lower = c.family == RotationCriterion::Family::CrawfordFerguson;
      double best = 0.0, best_val = 0.0;
      bool first = true;
      for (double phi = -pi / 4; phi < pi / 4; phi += 1e-4) {
        Matrix o(2, 2);
        o << std::cos(phi), -std::sin(phi), std::sin(phi), std::cos(phi);
        const double v = criterion_value(a * o, c);
        if (first || (lower ? v < best_val : v > best_val)) {
          best = phi;
          best_val = v;
          first = false;
        }
      }
      double diff = std::fmod(std::abs(got - best), pi / 2);
      diff = std::min(diff, pi / 2 - diff);
      EXPECT_LE(diff, 1e-3);
      expect_invariants(a, r, c);
    }
  }
}

TEST(Rotate, CfKappaGivesSameQuartimaxOnScaledOrthonormal) {
  std::mt19937_64 gen(5);
  for (double g : {0.5, 1.0, 2.0}) {
    const Matrix a = std::sqrt(g) * simpca::testing::random_orthonormal(8, 3, gen);
    const double ref = quartimax(rotate(a, RotationCriterion::crawford_ferguson(0.0)).b);
    for (double k : {0.25, 0.5, 1.0}) {
      const double v = quartimax(rotate(a, RotationCriterion::crawford_ferguson(k)).b);
      EXPECT_LE(simpca::testing::rel(v, ref), 1e-6);
    }
    const double om = quartimax(rotate(a, RotationCriterion::varimax()).b);
    EXPECT_LE(simpca::testing::rel(om, ref), 1e-6);
  }
}

TEST(Rotate, InvariantsOnRandomInputs) {
  std::mt19937_64 gen(6);
  for (int rep = 0; rep < 20; ++rep) {
    const Index d = 2 + rep % 4;
    const Matrix a = gaussian(d + 3 + rep % 5, d, gen);
    for (auto c : {RotationCriterion::varimax(), RotationCriterion::quartimax(),
                   RotationCriterion::equamax(d), RotationCriterion::crawford_ferguson(0.2)}) {
      RotationOptions opt;
      opt.kaiser = rep % 2 == 0;
      const RotationResult r = rotate(a, c, opt);
      expect_invariants(a, r, c);
      EXPECT_TRUE(r.converged);
    }
  }
}

TEST(Rotate, KaiserRoundTripAndZeroRow) {
  std::mt19937_64 gen(7);
  const Matrix a = gaussian(7, 3, gen);
  RotationOptions opt;
  opt.kaiser = true;
  const RotationResult r = rotate(a, RotationCriterion::varimax(), opt);
  EXPECT_TRUE(r.kaiser);
  EXPECT_LE((r.b.rowwise().norm() - a.rowwise().norm()).cwiseAbs().maxCoeff(), 1e-10);
  Matrix z = a;
  z.row(2).setZero();
  try {
    rotate(z, RotationCriterion::varimax(), opt);
    FAIL();
  } catch (const NumericalError& e) {
    EXPECT_EQ(e.code(), ErrorCode::ZeroRow);
  }
}

TEST(Rotate, RestartsAreDeterministicAndNoWorse) {
  std::mt19937_64 gen(8);
  const Matrix a = gaussian(9, 4, gen);
  RotationOptions opt;
  opt.restarts = 5;
  opt.seed = 42;
  const RotationResult r1 = rotate(a, RotationCriterion::varimax(), opt);
  const RotationResult r2 = rotate(a, RotationCriterion::varimax(), opt);
  EXPECT_EQ(r1.b, r2.b);
  EXPECT_EQ(r1.restart_used, r2.restart_used);
  const RotationResult single = rotate(a, RotationCriterion::varimax());
  EXPECT_GE(r1.criterion_trace.back(), single.criterion_trace.back() - 1e-12);
}

TEST(Rotate, Preconditions) {
  EXPECT_THROW(rotate(Matrix::Ones(4, 1), RotationCriterion::varimax()), ConfigError);
  EXPECT_THROW(rotate(Matrix::Ones(2, 3), RotationCriterion::varimax()), ConfigError);
  EXPECT_THROW(rotate(Matrix::Ones(4, 2), RotationCriterion::crawford_ferguson(1.5)),
               ConfigError);
  EXPECT_THROW(rotate(Matrix::Ones(4, 2), RotationCriterion::orthomax(-1.0)), ConfigError);
}

TEST(RotatedScores, IdentityAndEqualNorms) {
  std::mt19937_64 gen(9);
  const DataMatrix x = simpca::testing::random_data(20, 5, gen);
  const PcaModel m = fit_pca(x, 3);
  EXPECT_LE((rotated_scores(x.values, m.v, Matrix::Identity(3, 3)) - m.scores).norm(),
            1e-12 * m.scores.norm());
  const Matrix o = simpca::testing::random_orthonormal(3, 3, gen);
  const Matrix vn = rescale_coefficients(m.v, CoefficientScaling::component_unit_norm(), m.lambda);
  const Matrix s = rotated_scores(x.values, vn, o);
  for (Index j = 0; j < 3; ++j) EXPECT_NEAR(s.col(j).squaredNorm(), 1.0, 1e-8);
  // equal norms -> orthogonal rotated scores
  const Matrix g = s.transpose() * s;
  EXPECT_LE((g - Matrix::Identity(3, 3)).norm(), 1e-8);
}

TEST(RotatedScores, UnequalNormsGiveCorrelatedScores) {
  std::mt19937_64 gen(10);
  const DataMatrix x = simpca::testing::random_data(20, 5, gen);
  const PcaModel m = fit_pca(x, 2);
  const double th = 0.4;
  Matrix o(2, 2);
  o << std::cos(th), -std::sin(th), std::sin(th), std::cos(th);
  const Matrix s = rotated_scores(x.values, m.v, o);
  Matrix direct = Matrix::Zero(20, 2);
  for (Index i = 0; i < 20; ++i)
    for (Index j = 0; j < 2; ++j)
      for (Index k = 0; k < 5; ++k)
        for (Index l = 0; l < 2; ++l) direct(i, j) += x.values(i, k) * m.v(k, l) * o(l, j);
  EXPECT_LE((s - direct).norm(), 1e-10 * s.norm());
  EXPECT_GT(std::abs(correlation(s.col(0), s.col(1))), 1e-3);
}

TEST(CanonicalizeRotation, OrdersByVexpAndKeepsProduct) {
  std::mt19937_64 gen(11);
  const DataMatrix x = simpca::testing::random_data(25, 6, gen);
  const PcaModel m = fit_pca(x, 3);
  RotationResult r = rotate(m.v, RotationCriterion::varimax());
  canonicalize_rotation(x.values, r);
  EXPECT_LE((r.b - m.v * r.o).norm(), 1e-10);
  double prev = 1e300;
  for (Index j = 0; j < 3; ++j) {
    const double v = vexp_of_component(x.values, Vector(x.values * r.b.col(j)));
    EXPECT_LE(v, prev + 1e-12);
    prev = v;
    Index arg;
    r.b.col(j).cwiseAbs().maxCoeff(&arg);
    EXPECT_GT(r.b(arg, j), 0.0);
  }
}
