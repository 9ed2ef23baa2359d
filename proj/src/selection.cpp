#include "simpca/selection.hpp"

#include "simpca/error.hpp"
#include "simpca/kernels.hpp"
#include "simpca/pca.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <set>
#include <sstream>
#include <utility>

namespace simpca {

namespace {

constexpr double kTie = 1e-12;

bool passes(double value, double t) { return value >= t * (1.0 - kTie); }

void check_alpha(double alpha) {
  if (!(alpha > 0.0 && alpha <= 1.0))
    throw ConfigError("selection: alpha must lie in (0, 1]");
}

void check_target(const DataMatrix& x, const Vector& target) {
  if (target.size() != x.n())
    throw ConfigError("selection: target length does not match row count");
  if (target.squaredNorm() == 0.0)
    throw NumericalError(ErrorCode::ZeroTarget,
                         "selection: target is identically zero");
}

// Evaluates the stop rule on a support given its R^2.
class StopCheck {
 public:
  StopCheck(const DataMatrix& x, const Vector& target, StopCriterion stop)
      : x_(x), target_(target), stop_(stop) {
    check_alpha(stop.alpha);
    ref_ = stop.reference ? stop.reference : &x.values;
    if (stop_.rule == StopRule::RelativeVexp)
      target_vexp_ = vexp_of_component(*ref_, target);
  }

  bool operator()(const IndexList& support, double r2) const {
    if (stop_.rule == StopRule::R2) return passes(r2, stop_.alpha);
    const Matrix xs = x_.columns(support);
    const Vector fit = xs * solve_ls(xs, target_);
    if (fit.squaredNorm() == 0.0) return false;
    if (target_vexp_ == 0.0) return true;
    return passes(vexp_of_component(*ref_, fit) / target_vexp_,
                  stop_.alpha);
  }

 private:
  const DataMatrix& x_;
  const Vector& target_;
  StopCriterion stop_;
  const Matrix* ref_ = nullptr;
  double target_vexp_ = 0.0;
};

// Position of the largest value; values within kTie of the best keep the
// earliest position.
std::size_t argmax(const std::vector<double>& v) {
  std::size_t best = 0;
  for (std::size_t k = 1; k < v.size(); ++k)
    if (v[k] > v[best] + kTie) best = k;
  return best;
}

void insert_sorted(IndexList& s, Index i) {
  s.insert(std::upper_bound(s.begin(), s.end(), i), i);
}

IndexList complement(const IndexList& s, Index p) {
  IndexList out;
  for (Index j = 0; j < p; ++j)
    if (!std::binary_search(s.begin(), s.end(), j)) out.push_back(j);
  return out;
}

}  // namespace

bool SupportSet::contains(Index i) const {
  return std::find(indices.begin(), indices.end(), i) != indices.end();
}

void SelectionStrategy::validate() const {
  switch (kind) {
    case Kind::FixedThreshold:
      if (!(threshold > 0.0 && threshold <= 1.0))
        throw ConfigError("selection: threshold must lie in (0, 1]");
      break;
    case Kind::AdaptiveThreshold:
      if (!(step > 0.0 && t0 > step && t0 <= 1.0))
        throw ConfigError("selection: need 1 >= t0 > step > 0");
      break;
    case Kind::Stepwise:
      if (!(entry >= exit && exit >= 0.0))
        throw ConfigError("selection: need entry >= exit >= 0");
      check_alpha(alpha);
      break;
    default:
      check_alpha(alpha);
  }
  if (!(norm_order == 1.0 || norm_order == 2.0 ||
        norm_order == CoefficientScaling::kInfNorm))
    throw ConfigError("selection: norm must be 1, 2 or inf");
  if (max_cardinality && *max_cardinality < 1)
    throw ConfigError("selection: max cardinality must be >= 1");
}

std::string SelectionStrategy::name() const {
  switch (kind) {
    case Kind::FixedThreshold: return "threshold";
    case Kind::AdaptiveThreshold: return "adaptive";
    case Kind::IterativeReverseThreshold: return "iter-threshold";
    case Kind::Forward: return "forward";
    case Kind::Backward: return "backward";
    case Kind::Stepwise: return "stepwise";
  }
  return "unknown";
}

SupportSet threshold_support(const Vector& coefficients, double t,
                             double norm_order) {
  if (!(t > 0.0)) throw ConfigError("selection: threshold must be positive");
  const double norm = lm_norm(coefficients, norm_order);
  if (norm == 0.0)
    throw NumericalError(ErrorCode::ZeroColumn,
                         "selection: coefficient vector is all zero");
  SupportSet s;
  s.threshold = t;
  for (Index i = 0; i < coefficients.size(); ++i)
    if (passes(std::abs(coefficients(i)) / norm, t)) s.indices.push_back(i);
  if (s.indices.empty()) {
    std::ostringstream os;
    os << "selection: no coefficient reaches threshold " << t;
    throw NumericalError(ErrorCode::EmptySupport, os.str());
  }
  return s;
}

SupportSet adaptive_threshold_support(const Vector& coefficients, double t0,
                                      double step, double norm_order) {
  if (!(t0 > 0.0 && step > 0.0))
    throw ConfigError("selection: adaptive schedule needs t0 > 0, step > 0");
  for (int k = 0;; ++k) {
    const double t = t0 - k * step;
    if (t <= kTie)
      throw NumericalError(ErrorCode::ExhaustedSchedule,
                           "selection: threshold schedule reached zero");
    try {
      return threshold_support(coefficients, t, norm_order);
    } catch (const NumericalError& e) {
      if (e.code() != ErrorCode::EmptySupport) throw;
    }
  }
}

SupportSet iterative_reverse_threshold(const DataMatrix& x,
                                       const Vector& target,
                                       const Vector& coefficients,
                                       const StopCriterion& stop) {
  check_target(x, target);
  if (coefficients.size() != x.p())
    throw ConfigError("selection: coefficient length does not match columns");
  const StopCheck done(x, target, stop);
  IndexList order = all_indices(x.p());
  std::stable_sort(order.begin(), order.end(), [&](Index l, Index r) {
    return std::abs(coefficients(l)) > std::abs(coefficients(r));
  });
  SupportSet s;
  for (Index i : order) {
    insert_sorted(s.indices, i);
    const double r2 = r_squared(x.columns(s.indices), target);
    s.trace.push_back({i, true, r2});
    s.r2 = r2;
    if (done(s.indices, r2)) break;
  }
  return s;
}

SupportSet forward_select(const DataMatrix& x, const Vector& target,
                          const StopCriterion& stop,
                          std::optional<Index> max_cardinality) {
  check_target(x, target);
  const StopCheck done(x, target, stop);
  const Index cap = max_cardinality.value_or(x.p());
  SupportSet s;
  IndexList chosen;  // in order of entry
  while (static_cast<Index>(s.size()) < std::min(cap, x.p())) {
    const IndexList cand = complement(s.indices, x.p());
    const auto r2s = kernels::omp::candidate_r2(x.values, target, chosen, cand);
    const std::size_t k = argmax(r2s);
    chosen.push_back(cand[k]);
    insert_sorted(s.indices, cand[k]);
    s.trace.push_back({cand[k], true, r2s[k]});
    s.r2 = r2s[k];
    if (done(s.indices, r2s[k])) break;
  }
  return s;
}

SupportSet backward_select(const DataMatrix& x, const Vector& target,
                           const StopCriterion& stop,
                           const std::optional<IndexList>& seed) {
  check_target(x, target);
  const StopCheck done(x, target, stop);
  SupportSet s;
  if (seed) {
    s.indices = *seed;
    std::sort(s.indices.begin(), s.indices.end());
    s.indices.erase(std::unique(s.indices.begin(), s.indices.end()),
                    s.indices.end());
    if (s.indices.empty())
      throw NumericalError(ErrorCode::EmptySupport,
                           "selection: empty seed for backward elimination");
  } else {
    if (x.p() > x.n())
      throw NumericalError(
          ErrorCode::InitialFitUnderdetermined,
          "selection: backward elimination from " + std::to_string(x.p()) +
              " variables on " + std::to_string(x.n()) +
              " rows needs a seed support");
    s.indices = all_indices(x.p());
  }
  s.r2 = r_squared(x.columns(s.indices), target);
  while (s.size() > 1) {
    const auto r2s = kernels::omp::removal_r2(x.values, target, s.indices);
    const std::size_t k = argmax(r2s);
    IndexList next = s.indices;
    next.erase(next.begin() + static_cast<std::ptrdiff_t>(k));
    if (!done(next, r2s[k])) break;
    s.trace.push_back({s.indices[k], false, r2s[k]});
    s.indices = std::move(next);
    s.r2 = r2s[k];
  }
  return s;
}

SupportSet stepwise_select(const DataMatrix& x, const Vector& target,
                           const StopCriterion& stop, double entry, double exit,
                           std::optional<Index> max_cardinality) {
  check_target(x, target);
  if (!(entry >= exit && exit >= 0.0))
    throw ConfigError("selection: need entry >= exit >= 0");
  const StopCheck done(x, target, stop);
  const Index cap = std::min(max_cardinality.value_or(x.p()), x.p());
  SupportSet s;
  double cur = 0.0;
  std::set<std::pair<IndexList, Index>> removed;
  const std::size_t max_steps = 10 * static_cast<std::size_t>(x.p() + 1) *
                                static_cast<std::size_t>(x.p() + 1);
  for (std::size_t steps = 0; steps < max_steps; ++steps) {
    if (static_cast<Index>(s.size()) >= cap) break;
    const IndexList cand = complement(s.indices, x.p());
    if (cand.empty()) break;
    const auto r2s = kernels::omp::candidate_r2(x.values, target, s.indices, cand);
    const std::size_t k = argmax(r2s);
    if (!(r2s[k] - cur > entry)) break;
    insert_sorted(s.indices, cand[k]);
    cur = r2s[k];
    s.trace.push_back({cand[k], true, cur});

    while (s.size() > 1) {
      const auto rem = kernels::omp::removal_r2(x.values, target, s.indices);
      const std::size_t j = argmax(rem);
      if (!(cur - rem[j] < exit)) break;
      if (!removed.emplace(s.indices, s.indices[j]).second) break;
      const Index var = s.indices[j];
      s.indices.erase(s.indices.begin() + static_cast<std::ptrdiff_t>(j));
      cur = rem[j];
      s.trace.push_back({var, false, cur});
    }
    s.r2 = cur;
    if (done(s.indices, cur)) break;
  }
  if (!s.r2 && !s.indices.empty()) s.r2 = cur;
  return s;
}

SupportSet select_support(const DataMatrix& x, const Vector& target,
                          const Vector& coefficients,
                          const SelectionStrategy& strategy,
                          const Matrix* reference) {
  strategy.validate();
  const StopCriterion stop{strategy.stop, strategy.alpha, reference};
  switch (strategy.kind) {
    case SelectionStrategy::Kind::FixedThreshold:
      return threshold_support(coefficients, strategy.threshold,
                               strategy.norm_order);
    case SelectionStrategy::Kind::AdaptiveThreshold:
      return adaptive_threshold_support(coefficients, strategy.t0,
                                        strategy.step, strategy.norm_order);
    case SelectionStrategy::Kind::IterativeReverseThreshold:
      return iterative_reverse_threshold(x, target, coefficients, stop);
    case SelectionStrategy::Kind::Forward:
      return forward_select(x, target, stop, strategy.max_cardinality);
    case SelectionStrategy::Kind::Backward: {
      std::optional<IndexList> seed;
      if (x.p() > x.n())
        seed = forward_select(x, target, stop, strategy.max_cardinality).indices;
      return backward_select(x, target, stop, seed);
    }
    case SelectionStrategy::Kind::Stepwise:
      return stepwise_select(x, target, stop, strategy.entry, strategy.exit,
                             strategy.max_cardinality);
  }
  throw ConfigError("selection: unknown strategy");
}

}  // namespace simpca
