#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "wuq/quotient.hpp"
#include "wuq/report.hpp"
#include "wuq/schedule.hpp"
#include "wuq/seqvec.hpp"

namespace wuq {

/// a[j] = Q_j T omega_{j+1} (so a_{j-1} = Q_{j-1} T omega_j) and
/// b[j] = Q_j T omega_j, for j = 0..L (a[L], b[0] are zero).
struct ABParts {
  std::vector<FinVec> a;
  std::vector<FinVec> b;
  /// T omega_j, j = 1..L (index 0 unused).
  std::vector<FinVec> t_omega;
};

ABParts ab_parts(const BlockVector& x, const QuotientModel& model, const Blocking& cod);

struct AverageSearch {
  bool found = false;
  /// i_1 < ... < i_k on success; the minimizing set on failure.
  std::vector<std::size_t> indices;
  /// k^{-1} ||a_{i_1} + ... + a_{i_k}|| for `indices`: the minimum over all
  /// searched sets on failure (the l1 certificate: it is >= eps).
  Scalar average;
  std::size_t searched = 0;
};

/// Searches indices in the open window (lo, hi) of `as` (as[j] = a_j):
/// consecutive runs for k = 1, 2, ..., then all subsets with 2 <= k <=
/// subset_max. Throws EmptyWindow when the window holds no index of `as`.
AverageSearch find_small_average(const std::vector<FinVec>& as, const Scalar& eps, const NormSpec& norm,
                                 std::size_t lo, std::size_t hi, std::size_t subset_max = 4);

struct RampPlan {
  std::size_t n = 0;
  std::size_t m = 0;
  std::vector<std::size_t> i;
  std::vector<std::size_t> j;
  friend bool operator==(const RampPlan&, const RampPlan&) = default;
};

/// Block coefficients of the ramp: 1 up to i_1, (k-t)/k on (i_t, i_{t+1}],
/// 0 on (i_k, j_1], t/K on (j_t, j_{t+1}], 1 beyond j_K.
CombCoefficients ramp_coefficients(const RampPlan& plan, std::size_t blocks);
/// Throws PlanIncompatible when the plan is not n < i_1 < ... < i_k < j_1 <
/// ... < j_K < m inside the blocking.
FinVec build_ramp(const BlockVector& x, const RampPlan& plan);

struct FlattenOptions {
  std::size_t subset_max = 4;
  /// Maximum number of widenings of the i-window.
  std::size_t widen_cap = 8;
};

struct FlattenResult {
  bool found = false;
  FinVec xbar;
  /// Deleted block: P_r xbar = 0.
  std::size_t r = 0;
  std::size_t n0 = 0;
  RampPlan plan;
  /// Hypotheses of the lemma and every sub-estimate of its proof.
  InequalityReport report;
  /// Set when found is false: "WindowExhausted".
  std::string failure;
  /// "i" or "j": which average search ran out of room.
  std::string failed_search;
  AverageSearch certificate;
};

/// Finds xbar <~ x with ||Tx - T xbar|| < eps and P_r xbar = 0 for some r in
/// (n, m), working inside the window (n, m).
FlattenResult flatten(const FinVec& x, const QuotientModel& model, const EpsilonSchedule& schedule,
                      const Blocking& dom, const Blocking& cod, std::size_t n, std::size_t m, const Scalar& eps,
                      const FlattenOptions& options = {});

/// Replays the sub-estimates of the flattening bound for a given plan.
InequalityReport flatten_estimates(const FinVec& x, const FinVec& xbar, const QuotientModel& model,
                                   const EpsilonSchedule& schedule, const Blocking& dom, const Blocking& cod,
                                   const RampPlan& plan, std::size_t n0, const Scalar& eps);

/// For every even-length consecutive run and every pair of indices in the
/// window (n, m), replays the lower-bound chain for the alternating sum
/// a_{i_1} - a_{i_2} + ... and checks it stays <= C ||T|| + 1, with ||T||
/// taken at its certified lower bound.
InequalityReport alternating_bound_check(const FinVec& x, const QuotientModel& model, const EpsilonSchedule& schedule,
                                         const Blocking& dom, const Blocking& cod, std::size_t n, std::size_t m,
                                         const NormConfig& config = {});

}  // namespace wuq
