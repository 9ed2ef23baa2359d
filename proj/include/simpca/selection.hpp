#pragma once

#include "simpca/matrix_core.hpp"

#include <optional>
#include <string>
#include <vector>

namespace simpca {

/// When a regression-type selection has explained enough of its target.
///   R2:           R^2(target ~ selected columns) >= alpha
///   RelativeVexp: vexp(projection) / vexp(target) >= alpha
enum class StopRule { R2, RelativeVexp };

struct SelectionStep {
  Index index;     // variable added or removed
  bool added;      // false for removals
  double r2;       // R^2 after the step
};

/// Selected column indices plus the regression record that produced them.
struct SupportSet {
  IndexList indices;
  std::optional<double> r2;         // R^2 of the target on `indices`
  std::vector<SelectionStep> trace;
  std::optional<double> threshold;  // threshold actually applied, if any

  std::size_t size() const { return indices.size(); }
  bool contains(Index i) const;
};

struct SelectionStrategy {
  enum class Kind {
    FixedThreshold,
    AdaptiveThreshold,
    IterativeReverseThreshold,
    Forward,
    Backward,
    Stepwise,
  };

  Kind kind = Kind::Forward;
  double alpha = 0.95;
  double threshold = 0.3;  // FixedThreshold
  double t0 = 0.25;        // AdaptiveThreshold start
  double step = 0.05;      // AdaptiveThreshold decrement
  double norm_order = 2.0; // L_m norm used before thresholding
  double entry = 1e-6;     // Stepwise: minimum R^2 gain to enter
  double exit = 1e-6;      // Stepwise: R^2 loss below which a variable leaves
  StopRule stop = StopRule::R2;
  std::optional<Index> max_cardinality;

  bool is_threshold() const {
    return kind == Kind::FixedThreshold || kind == Kind::AdaptiveThreshold;
  }
  void validate() const;
  std::string name() const;
};

/// Stopping test shared by the regression strategies. `reference` is the
/// matrix RelativeVexp measures variance in (the data itself when null; the
/// current orthocomplement inside a deflated pipeline).
struct StopCriterion {
  StopRule rule = StopRule::R2;
  double alpha = 0.95;
  const Matrix* reference = nullptr;
};

/// Indices whose |coefficient| after unit-L_m rescaling is >= t.
/// Throws EmptySupport when nothing survives.
SupportSet threshold_support(const Vector& coefficients, double t,
                             double norm_order = 2.0);

/// Tries t0, t0 - step, t0 - 2 step, ... until the support is non-empty.
/// Throws ExhaustedSchedule if the threshold would reach zero.
SupportSet adaptive_threshold_support(const Vector& coefficients, double t0,
                                      double step, double norm_order = 2.0);

/// Adds variables in descending |coefficient| order (ties: lowest index)
/// until the stop criterion holds or all variables are in.
SupportSet iterative_reverse_threshold(const DataMatrix& x,
                                       const Vector& target,
                                       const Vector& coefficients,
                                       const StopCriterion& stop);
inline SupportSet iterative_reverse_threshold(const DataMatrix& x,
                                              const Vector& target,
                                              const Vector& coefficients,
                                              double alpha) {
  return iterative_reverse_threshold(x, target, coefficients,
                                     {StopRule::R2, alpha, nullptr});
}

/// Greedy forward regression: adds the variable with the largest R^2 until
/// the stop criterion holds, the cap is reached or no variable is left.
SupportSet forward_select(const DataMatrix& x, const Vector& target,
                          const StopCriterion& stop,
                          std::optional<Index> max_cardinality = {});
inline SupportSet forward_select(const DataMatrix& x, const Vector& target,
                                 double alpha,
                                 std::optional<Index> max_cardinality = {}) {
  return forward_select(x, target, {StopRule::R2, alpha, nullptr}, max_cardinality);
}

/// Backward elimination from the full set (or `seed`): removes the variable
/// whose removal keeps R^2 highest while the stop criterion still holds
/// afterwards. Throws InitialFitUnderdetermined when p > n and no seed is
/// given.
SupportSet backward_select(const DataMatrix& x, const Vector& target,
                           const StopCriterion& stop,
                           const std::optional<IndexList>& seed = {});
inline SupportSet backward_select(const DataMatrix& x, const Vector& target,
                                  double alpha,
                                  const std::optional<IndexList>& seed = {}) {
  return backward_select(x, target, {StopRule::R2, alpha, nullptr}, seed);
}

/// Forward steps (gain > entry) each followed by removal of any variable
/// whose deletion costs less than `exit` in R^2. A (set, variable) removal
/// is never repeated, which bounds the number of steps.
SupportSet stepwise_select(const DataMatrix& x, const Vector& target,
                           const StopCriterion& stop, double entry,
                           double exit,
                           std::optional<Index> max_cardinality = {});
inline SupportSet stepwise_select(const DataMatrix& x, const Vector& target,
                                  double alpha, double entry = 1e-6,
                                  double exit = 1e-6) {
  return stepwise_select(x, target, {StopRule::R2, alpha, nullptr}, entry, exit);
}

/// Dispatches on the strategy. `coefficients` is only read by the
/// threshold strategies; `target` only by the regression ones.
SupportSet select_support(const DataMatrix& x, const Vector& target,
                          const Vector& coefficients,
                          const SelectionStrategy& strategy,
                          const Matrix* reference = nullptr);

}  // namespace simpca
