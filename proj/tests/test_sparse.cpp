#include "simpca/error.hpp"
#include "simpca/report.hpp"
#include "simpca/sparse.hpp"
#include "support.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/LU>
#include <gtest/gtest.h>

using namespace simpca;
using simpca::testing::gaussian;
using simpca::testing::random_data;
using simpca::testing::random_support;

namespace {

// Leading generalized eigenvector, formed explicitly from the definitions.
Vector generalized_oracle(const Matrix& q, const IndexList& s) {
  Matrix qs(q.rows(), static_cast<Index>(s.size()));
  for (std::size_t k = 0; k < s.size(); ++k) qs.col(static_cast<Index>(k)) = q.col(s[k]);
  const Matrix num = qs.transpose() * q * q.transpose() * qs;
  const Matrix den = qs.transpose() * qs;
  Eigen::GeneralizedSelfAdjointEigenSolver<Matrix> es(num, den);
  Vector a = es.eigenvectors().col(es.eigenvectors().cols() - 1);
  return a / a.norm();
}

double abs_cos(const Vector& a, const Vector& b) {
  return std::abs(a.dot(b)) / (a.norm() * b.norm());
}

}  // namespace

TEST(Contributions, SignedPercents) {
  Vector a(3);
  a << 2.0, -1.0, 1.0;
  const auto c = contributions(a);
  EXPECT_DOUBLE_EQ(c[0], 50.0);
  EXPECT_DOUBLE_EQ(c[1], -25.0);
  EXPECT_DOUBLE_EQ(c[2], 25.0);
  EXPECT_THROW(contributions(Vector::Zero(2)), NumericalError);
}

TEST(Pspca, FullSupportReproducesTarget) {
  std::mt19937_64 gen(1);
  const DataMatrix x = random_data(20, 6, gen);
  const PcaModel m = fit_pca(x, 2);
  for (Index j = 0; j < 2; ++j) {
    const SparseComponent c = project_component(x, all_indices(6), m.scores.col(j));
    EXPECT_LT((c.scores - m.scores.col(j)).norm() / m.scores.col(j).norm(), 1e-10);
    EXPECT_NEAR(c.vexp, m.vexp(j), 1e-10 * m.vexp(j));
    EXPECT_NEAR(*c.r2_vs_target, 1.0, 1e-12);
  }
}

TEST(Pspca, SingleVariableSupport) {
  std::mt19937_64 gen(2);
  const DataMatrix x = random_data(20, 5, gen);
  const Vector t = fit_pca(x, 1).scores.col(0);
  const SparseComponent c = project_component(x, {2}, t);
  EXPECT_LT(std::abs(abs_cos(c.scores, x.values.col(2)) - 1.0), 1e-12);
  const double r = correlation(t, x.values.col(2));
  EXPECT_NEAR(*c.r2_vs_target, r * r, 1e-12);
}

TEST(Pspca, BoundAndCorrelationIdentity) {
  std::mt19937_64 gen(3);
  for (int rep = 0; rep < 60; ++rep) {
    const Index n = 8 + rep % 20;
    const Index p = 3 + rep % 9;
    const DataMatrix x = random_data(n, p, gen);
    const PcaModel m = fit_pca(x, 1);
    const Vector t = m.scores.col(0);
    const IndexList s = random_support(p, 1 + rep % p, gen);
    const SparseComponent c = project_component(x, s, t);
    const double r2 = *c.r2_vs_target;
    const double total = x.values.squaredNorm();
    EXPECT_GE(c.vexp, r2 * m.vexp(0) - 1e-8 * total);
    const double corr = correlation(t, c.scores);
    EXPECT_NEAR(corr * corr, r2, 1e-10);
  }
}

TEST(Pspca, ResidualOrthogonalToSupport) {
  std::mt19937_64 gen(4);
  const DataMatrix x = random_data(25, 7, gen);
  const Vector t = fit_pca(x, 1).scores.col(0);
  const IndexList s{0, 3, 5};
  const SparseComponent c = project_component(x, s, t);
  const Vector res = t - c.scores;
  EXPECT_LT((x.columns(s).transpose() * res).norm(), 1e-9 * t.norm());
}

TEST(Pspca, Errors) {
  std::mt19937_64 gen(5);
  const DataMatrix x = random_data(10, 4, gen);
  EXPECT_THROW(project_component(x, {}, x.values.col(0)), NumericalError);
  EXPECT_THROW(project_component(x, {1}, Vector::Zero(10)), NumericalError);
  EXPECT_THROW(project_component(x, {7}, x.values.col(0)), ConfigError);
}

TEST(Cspca, FullSupportIsFirstPc) {
  std::mt19937_64 gen(6);
  const DataMatrix x = random_data(20, 6, gen);
  const PcaModel m = fit_pca(x, 1);
  const SparseComponent c = cspca_component(x, x.values, all_indices(6));
  EXPECT_NEAR(abs_cos(c.coefficients, m.v.col(0)), 1.0, 1e-10);
  EXPECT_NEAR(c.vexp, m.vexp(0), 1e-8 * m.vexp(0));
}

TEST(Cspca, SingleVariable) {
  std::mt19937_64 gen(7);
  const DataMatrix x = random_data(20, 5, gen);
  const SparseComponent c = cspca_component(x, x.values, {3});
  EXPECT_DOUBLE_EQ(c.coefficients(0), 1.0);
  EXPECT_NEAR(c.vexp, vexp_of_component(x, x.values.col(3)), 1e-12 * c.vexp);
}

TEST(Cspca, GeneralizedEigenOracle) {
  std::mt19937_64 gen(8);
  for (int rep = 0; rep < 40; ++rep) {
    const DataMatrix x = random_data(15 + rep % 10, 6, gen);
    Matrix q = x.values;
    if (rep % 2) q = deflate(x, fit_pca(x, 1).scores.col(0));
    const IndexList s = random_support(6, 1 + rep % 3, gen);
    const SparseComponent c = cspca_component(x, q, s);
    EXPECT_NEAR(abs_cos(c.coefficients, generalized_oracle(q, s)), 1.0, 1e-8);
  }
}

TEST(Cspca, SingularSubset) {
  std::mt19937_64 gen(9);
  Matrix raw = gaussian(12, 4, gen);
  raw.col(3) = 2.0 * raw.col(1);
  const DataMatrix x = center_scale(raw, Scaling::None);
  try {
    cspca_component(x, x.values, {1, 3});
    FAIL();
  } catch (const NumericalError& e) {
    EXPECT_EQ(e.code(), ErrorCode::SingularSubset);
  }
}

TEST(Cspca, DeflatedFullSupportIsSecondPc) {
  std::mt19937_64 gen(23);
  const DataMatrix x = random_data(20, 6, gen);
  const PcaModel m = fit_pca(x, 2);
  const Matrix q = deflate(x, m.scores.col(0));
  const SparseComponent c = cspca_component(x, q, all_indices(6));
  EXPECT_NEAR(c.extra_vexp, m.vexp(1), 1e-8 * m.vexp(1));
}

TEST(Cspca, NothingLeftAfterDeflation) {
  std::mt19937_64 gen(24);
  const DataMatrix x = random_data(20, 4, gen);
  try {
    cspca_component(x, deflate(x, x.values.col(1)), {1});
    FAIL();
  } catch (const NumericalError& e) {
    EXPECT_EQ(e.code(), ErrorCode::SingularSubset);
  }
}

TEST(Uspca, WithoutPreviousEqualsCspca) {
  std::mt19937_64 gen(10);
  const DataMatrix x = random_data(20, 6, gen);
  const IndexList s{1, 2, 4};
  const SparseComponent a = uspca_component(x, x.values, s, Matrix(20, 0));
  const SparseComponent b = cspca_component(x, x.values, s);
  EXPECT_LT((a.coefficients - b.coefficients).norm(), 1e-12);
}

TEST(Uspca, OrthogonalToPrevious) {
  std::mt19937_64 gen(11);
  for (int rep = 0; rep < 30; ++rep) {
    const DataMatrix x = random_data(25, 8, gen);
    const SparseComponent first = cspca_component(x, x.values, {0, 1, 2});
    const Matrix q = deflate(x, first.scores);
    const SparseComponent c = uspca_component(x, q, random_support(8, 3, gen), first.scores);
    EXPECT_LT(std::abs(first.scores.dot(c.scores)) / (first.scores.norm() * c.scores.norm()),
              1e-8);
  }
}

TEST(Uspca, NullSpaceBruteForce) {
  std::mt19937_64 gen(12);
  for (int rep = 0; rep < 20; ++rep) {
    const DataMatrix x = random_data(25, 7, gen);
    const Vector prev = x.values * gaussian(7, 1, gen).col(0);
    const Matrix q = deflate(x, prev);
    const IndexList s = random_support(7, 4, gen);
    const SparseComponent c = uspca_component(x, q, s, prev);
    // LU kernel of the constraint, then the generalized problem within it
    const Matrix xs = x.columns(s);
    const Matrix n = Eigen::FullPivLU<Matrix>(prev.transpose() * xs).kernel();
    Matrix qs(q.rows(), 4);
    for (Index k = 0; k < 4; ++k) qs.col(k) = q.col(s[static_cast<std::size_t>(k)]);
    const Matrix num = n.transpose() * qs.transpose() * q * q.transpose() * qs * n;
    const Matrix den = n.transpose() * qs.transpose() * qs * n;
    Eigen::GeneralizedSelfAdjointEigenSolver<Matrix> es(num, den);
    const Vector a = n * es.eigenvectors().col(es.eigenvectors().cols() - 1);
    EXPECT_NEAR(c.extra_vexp, extra_vexp(q, xs * a), 1e-8 * x.values.squaredNorm());
  }
}

TEST(Uspca, InfeasibleOrthogonality) {
  std::mt19937_64 gen(13);
  const DataMatrix x = random_data(20, 5, gen);
  const Vector prev = x.values.col(2);
  try {
    uspca_component(x, x.values, {2}, prev);
    FAIL();
  } catch (const NumericalError& e) {
    EXPECT_EQ(e.code(), ErrorCode::InfeasibleOrthogonality);
  }
}

TEST(Dominance, CspcaExplainsMostExtraVariance) {
  std::mt19937_64 gen(14);
  for (int rep = 0; rep < 40; ++rep) {
    const DataMatrix x = random_data(20, 7, gen);
    const Vector prev = fit_pca(x, 1).scores.col(0);
    const Matrix q = deflate(x, prev);
    const Vector t = q * gaussian(7, 1, gen).col(0);
    const IndexList s = random_support(7, 2 + rep % 4, gen);
    const double cs = cspca_component(x, q, s).extra_vexp;
    EXPECT_GE(cs, project_component(x, q, s, t).extra_vexp - 1e-8);
    EXPECT_GE(cs, uspca_component(x, q, s, prev).extra_vexp - 1e-8);
  }
}

TEST(PlainThreshold, KeepsOriginalCoefficients) {
  Vector v(4);
  v << 0.7, -0.6, 0.1, 0.2;
  v.normalize();
  std::mt19937_64 gen(15);
  const DataMatrix x = random_data(20, 4, gen);
  const SparseComponent c = plain_threshold_component(x, v, 0.3);
  EXPECT_EQ(c.support.indices, (IndexList{0, 1}));
  EXPECT_NEAR(c.coefficients(0) / c.coefficients(1), v(0) / v(1), 1e-14);
  EXPECT_NEAR(c.coefficients.norm(), 1.0, 1e-14);
  EXPECT_EQ(*c.support.threshold, 0.3);
}

TEST(PlainThreshold, FullSupportReproducesPc) {
  std::mt19937_64 gen(16);
  const DataMatrix x = random_data(20, 5, gen);
  const PcaModel m = fit_pca(x, 1);
  const SparseComponent c = plain_threshold_component(x, x.values, m.v.col(0), all_indices(5));
  EXPECT_LT((c.scores - m.scores.col(0)).norm() / m.scores.col(0).norm(), 1e-12);
}

TEST(PlainThreshold, VexpCanDropWhenAVariableIsAdded) {
  // Scripted search over 4-variable covariance structures.
  std::mt19937_64 gen(17);
  double worst = 0.0;
  for (int rep = 0; rep < 2000 && worst <= 0.0; ++rep) {
    const DataMatrix x = center_scale(gaussian(40, 4, gen) * gaussian(4, 4, gen), Scaling::None);
    const Vector v = fit_pca(x, 1).v.col(0);
    IndexList order = all_indices(4);
    std::sort(order.begin(), order.end(),
              [&](Index a, Index b) { return std::abs(v(a)) > std::abs(v(b)); });
    for (std::size_t k = 1; k < 4; ++k) {
      IndexList a(order.begin(), order.begin() + static_cast<std::ptrdiff_t>(k));
      IndexList b(order.begin(), order.begin() + static_cast<std::ptrdiff_t>(k + 1));
      std::sort(a.begin(), a.end());
      std::sort(b.begin(), b.end());
      const double drop = plain_threshold_component(x, x.values, v, a).vexp -
                          plain_threshold_component(x, x.values, v, b).vexp;
      worst = std::max(worst, drop);
    }
  }
  EXPECT_GT(worst, 0.0);
}

TEST(ComponentCorrelations, Basics) {
  std::mt19937_64 gen(18);
  const DataMatrix x = random_data(20, 5, gen);
  const PcaModel m = fit_pca(x, 3);
  const Matrix r = component_correlations(m.scores);
  EXPECT_LT((r - Matrix::Identity(3, 3)).cwiseAbs().maxCoeff(), 1e-10);
  Matrix s(20, 2);
  s.col(0) = x.values.col(0);
  s.col(1) = -3.0 * x.values.col(0);
  EXPECT_NEAR(component_correlations(s)(0, 1), -1.0, 1e-12);
  EXPECT_EQ(component_correlations(std::vector<SparseComponent>{}).rows(), 0);
}

TEST(RunSimpca, FullSupportCumulativeEqualsTargets) {
  std::mt19937_64 gen(19);
  const DataMatrix x = random_data(30, 6, gen);
  for (SparseMethod method : {SparseMethod::Pspca, SparseMethod::PlainThreshold}) {
    SimpcaConfig cfg;
    cfg.nr = cfg.nd = 3;
    cfg.deflate = false;
    cfg.method = method;
    cfg.selection.kind = SelectionStrategy::Kind::FixedThreshold;
    cfg.selection.threshold = 1e-9;
    const SimpcaResult r = run_simpca(x, cfg);
    ASSERT_EQ(r.components.size(), 3u);
    for (std::size_t j = 0; j < 3; ++j) {
      EXPECT_EQ(r.components[j].cardinality(), 6u);
      EXPECT_NEAR(r.cvexp[j], r.target_cvexp[j], 1e-8 * r.target_cvexp[j]);
      EXPECT_NEAR(r.components[j].vexp, r.targets[j].vexp, 1e-8 * r.targets[j].vexp);
    }
    EXPECT_NEAR(r.cvexp[2], r.pca.vexp.head(3).sum(), 1e-8 * r.cvexp[2]);
  }
}

TEST(RunSimpca, DeflatedComponentsAreNearlyUncorrelated) {
  std::mt19937_64 gen(20);
  for (int rep = 0; rep < 10; ++rep) {
    const DataMatrix x = random_data(30, 8, gen);
    SimpcaConfig cfg;
    cfg.nr = cfg.nd = 3;
    cfg.selection.alpha = 0.95;
    const SimpcaResult r = run_simpca(x, cfg);
    const Matrix c = component_correlations(r.components);
    for (Index i = 0; i < 3; ++i)
      for (Index j = 0; j < 3; ++j)
        if (i != j) EXPECT_LE(c(i, j) * c(i, j), 0.05 + 1e-6);
  }
}

TEST(RunSimpca, ConfigChecks) {
  std::mt19937_64 gen(21);
  const DataMatrix x = random_data(10, 4, gen);
  SimpcaConfig cfg;
  cfg.nr = 2;
  cfg.nd = 3;
  EXPECT_THROW(run_simpca(x, cfg), ConfigError);
  cfg.nr = 6;
  cfg.nd = 1;
  EXPECT_THROW(run_simpca(x, cfg), NumericalError);
  cfg.nr = 2;
  cfg.nd = 0;
  EXPECT_TRUE(run_simpca(x, cfg).components.empty());
}

TEST(RunSimpca, ErrorsNameTheComponent) {
  std::mt19937_64 gen(22);
  const DataMatrix x = random_data(20, 4, gen);
  SimpcaConfig cfg;
  cfg.selection.kind = SelectionStrategy::Kind::FixedThreshold;
  cfg.selection.threshold = 1.0;
  try {
    run_simpca(x, cfg);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::Numerical);
    EXPECT_EQ(e.code(), ErrorCode::EmptySupport);
    EXPECT_EQ(std::string(e.what()).rfind("component 1: ", 0), 0u);
  }
}

class Eurojobs : public ::testing::Test {
 protected:
  void SetUp() override {
    data_ = ingest_csv(std::string(SIMPCA_DATA_DIR) + "/eurojobs.csv", ',', "country");
    x_ = center_scale(data_.raw, Scaling::None, data_.names);
  }
  SimpcaConfig config() const {
    SimpcaConfig cfg;
    cfg.nr = 5;
    cfg.nd = 3;
    cfg.coefficient_scaling = CoefficientScaling::component_unit_norm();
    cfg.rotation.kaiser = true;
    return cfg;
  }
  Dataset data_;
  DataMatrix x_;
};

TEST_F(Eurojobs, ForwardRelativeVexpPicksAgriculture) {
  SimpcaConfig cfg = config();
  cfg.selection.alpha = 0.99;
  cfg.selection.stop = StopRule::RelativeVexp;
  const SimpcaResult r = run_simpca(x_, cfg);
  ASSERT_EQ(r.components[0].support.indices, IndexList{0});
  EXPECT_EQ(data_.names[0], "agriculture");
  EXPECT_NEAR(100.0 * r.components[0].vexp / x_.values.squaredNorm(), 81.0, 1.0);
}

TEST_F(Eurojobs, ThresholdSupportAndContributions) {
  SimpcaConfig cfg = config();
  cfg.selection.kind = SelectionStrategy::Kind::FixedThreshold;
  cfg.selection.threshold = 0.3;
  const SimpcaResult r = run_simpca(x_, cfg);
  const SparseComponent& c = r.components[0];
  ASSERT_EQ(c.support.indices, (IndexList{0, 2, 5}));
  const double want[] = {44, -27, -29};
  for (int k = 0; k < 3; ++k) EXPECT_NEAR(c.contributions[static_cast<std::size_t>(k)], want[k], 3.0);
}
