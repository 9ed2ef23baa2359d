#pragma once

#include "simpca/matrix_core.hpp"
#include "simpca/pca.hpp"
#include "simpca/rotation.hpp"
#include "simpca/selection.hpp"

#include <optional>
#include <string>
#include <vector>

namespace simpca {

enum class SparseMethod { Pspca, Cspca, Uspca, PlainThreshold };
std::string to_string(SparseMethod method);

/// A component with truly zero coefficients outside its support.
struct SparseComponent {
  SupportSet support;
  Vector coefficients;   // aligned with support.indices
  Vector scores;         // X[:, support] * coefficients
  SparseMethod method = SparseMethod::Pspca;
  double vexp = 0.0;        // vexp_of_component(X, scores)
  double extra_vexp = 0.0;  // against the orthocomplement in force
  std::optional<double> r2_vs_target;  // squared corr with the target
  std::vector<double> contributions;   // signed percents of unit-L1 coefs

  std::size_t cardinality() const { return support.indices.size(); }
  /// Full p-vector of coefficients (zeros off the support).
  Vector full_coefficients(Index p) const;
};

/// Signed percent contributions: 100 * a_i / sum |a|.
std::vector<double> contributions(const Vector& coefficients);

/// PSPCA: least-squares projection of `target` onto the support columns.
/// `q` is the orthocomplement used for extra_vexp (pass x.values for the
/// first component).
SparseComponent project_component(const DataMatrix& x, const IndexList& support,
                                  const Vector& target);
SparseComponent project_component(const DataMatrix& x, const Matrix& q,
                                  const IndexList& support,
                                  const Vector& target);

/// CSPCA: coefficients maximizing the extra variance explained on the
/// support (leading generalized eigenvector of Q_s'QQ'Q_s against Q_s'Q_s).
/// Throws SingularSubset if the support columns of X are collinear, or if
/// none of their variance is left in Q.
SparseComponent cspca_component(const DataMatrix& x, const Matrix& q,
                                const IndexList& support);

/// USPCA: as CSPCA with scores constrained orthogonal to every column of
/// `previous_scores` (n x k, may have zero columns).
SparseComponent uspca_component(const DataMatrix& x, const Matrix& q,
                                const IndexList& support,
                                const Matrix& previous_scores);

/// Original coefficients kept on the support, rescaled to unit L2; nothing
/// is recomputed. vexp is measured, not assumed.
SparseComponent plain_threshold_component(const DataMatrix& x, const Matrix& q,
                                          const Vector& coefficients,
                                          const IndexList& support);
/// Convenience: thresholds `coefficients` at t under the L_m norm first.
SparseComponent plain_threshold_component(const DataMatrix& x,
                                          const Vector& coefficients, double t,
                                          double norm_order = 2.0);

/// Pearson correlation matrix of the component scores.
Matrix component_correlations(const std::vector<SparseComponent>& components);
Matrix component_correlations(const Matrix& scores);

struct SimpcaConfig {
  Index nd = 2;  // components to output
  Index nr = 2;  // components to rotate at each step
  CoefficientScaling coefficient_scaling = CoefficientScaling::unit_l2();
  RotationCriterion criterion = RotationCriterion::varimax();
  RotationOptions rotation;
  SelectionStrategy selection;
  SparseMethod method = SparseMethod::Pspca;
  bool deflate = true;

  void validate(Index rank) const;
};

/// The rotated component a sparse component was built from.
struct RotatedTarget {
  Vector coefficients;  // p-vector, rotated coefficients of the working data
  Vector scores;        // working-data scores
  double vexp = 0.0;    // vexp of the scores within X
};

struct SimpcaResult {
  PcaModel pca;                         // PCA of X (first nr components)
  RotationResult rotation;              // rotation of X's coefficients
  std::vector<SparseComponent> components;
  std::vector<RotatedTarget> targets;   // one per component
  std::vector<double> cvexp;            // cumulative sparse variance
  std::vector<double> target_cvexp;     // cumulative rotated-pc variance
  std::vector<double> rcvexp;           // cvexp / target_cvexp
};

/// PCA -> coefficient scaling -> rotation -> per component: select support,
/// build the sparse component, account for variance; with `deflate` the
/// pcs and their rotation are recomputed on the orthocomplement of the
/// accepted components before each new one.
SimpcaResult run_simpca(const DataMatrix& x, const SimpcaConfig& config);

}  // namespace simpca
