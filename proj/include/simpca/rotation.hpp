#pragma once

#include "simpca/matrix_core.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace simpca {

/// Orthogonal simplicity criteria.
///
/// Orthomax(c) maximizes p * sum b^4 - c * sum_j (sum_i b_ij^2)^2.
/// Crawford-Ferguson(kappa) minimizes the CF complexity; for orthogonal
/// rotations it is the same problem as Orthomax with c = p * kappa.
struct RotationCriterion {
  enum class Family { Orthomax, CrawfordFerguson };

  Family family = Family::Orthomax;
  double parameter = 1.0;  // c for Orthomax, kappa for CF

  static RotationCriterion quartimax() { return {Family::Orthomax, 0.0}; }
  static RotationCriterion varimax() { return {Family::Orthomax, 1.0}; }
  static RotationCriterion equamax(Index d) {
    return {Family::Orthomax, static_cast<double>(d) / 2.0};
  }
  static RotationCriterion orthomax(double c) { return {Family::Orthomax, c}; }
  static RotationCriterion crawford_ferguson(double kappa) {
    return {Family::CrawfordFerguson, kappa};
  }

  /// Throws ConfigError unless c >= 0 / 0 <= kappa <= 1.
  void validate() const;
  std::string name() const;
};

/// Crawford-Ferguson complexity
///   (1-k) sum_i sum_j sum_{l!=j} b_ij^2 b_il^2 + k sum_j sum_i sum_{l!=i} b_ij^2 b_lj^2
double cf_value(const Matrix& b, double kappa);

/// Orthomax value with the column term added:
///   p sum b^4 + c sum_j (sum_i b_ij^2)^2.
/// The rotation objective is `orthomax_value(b, -c)`.
double orthomax_value(const Matrix& b, double c);

/// Value the rotation optimizes, in the criterion's own units: CF complexity
/// (lower is better) or the Orthomax objective (higher is better).
double criterion_value(const Matrix& b, const RotationCriterion& criterion);

struct RotationOptions {
  bool kaiser = false;
  double tol = 1e-8;  // relative criterion change over a full sweep
  int max_sweeps = 1000;
  int restarts = 1;  // restart 0 starts at the identity, others at random
  std::uint64_t seed = 0;
};

struct RotationResult {
  Matrix b;  // rotated coefficients, A * O
  Matrix o;  // orthogonal d x d rotation
  std::vector<double> criterion_trace;  // initial value, then one per sweep
  bool kaiser = false;
  bool converged = false;
  int sweeps_used = 0;
  int restart_used = 0;
};

/// Cyclic plane-rotation (Jacobi-style) optimization of the criterion over
/// orthogonal rotations of `a` (p x d, p >= d >= 2). Each plane step jumps to
/// the exact optimum of the two-column restriction, so the trace is
/// monotone. With `kaiser`, rows are scaled to unit length before rotating
/// and scaled back afterwards (ZeroRow if a row vanishes).
RotationResult rotate(const Matrix& a, const RotationCriterion& criterion,
                      const RotationOptions& options = {});

/// X V O.
Matrix rotated_scores(const Matrix& x, const Matrix& v, const Matrix& o);

/// Reorders the columns of `result` by descending vexp of their scores X B
/// and flips each column so its largest-|value| coefficient is positive.
/// B = A O is preserved (O is permuted and sign-flipped the same way).
void canonicalize_rotation(const Matrix& x, RotationResult& result);

}  // namespace simpca
