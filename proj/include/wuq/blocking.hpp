#pragma once

#include <cstddef>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "wuq/quotient.hpp"
#include "wuq/report.hpp"
#include "wuq/schedule.hpp"
#include "wuq/seqvec.hpp"

namespace wuq {

/// Everything the inequality lemmas quantify over. Blockings are in
/// coordinates; `dom`/`cod` are the (E_i)/(F_i) obtained from the tilde
/// blockings by one shared cut sequence.
struct Scene {
  std::shared_ptr<const QuotientModel> model;
  EpsilonSchedule schedule;
  Blocking dom_tilde;
  Blocking cod_tilde;
  Blocking dom;
  Blocking cod;
  /// y'_1, y'_2, ...: one vector per (F_i) block.
  std::vector<FinVec> ys;

  /// Window (n, m) for checks "1.2" and "1.6a/b"; all windows when absent.
  std::optional<std::pair<std::size_t, std::size_t>> window;
  /// Check "1.3": selected indices p_1 < p_2 < ... and r_1 < r_2 < ...
  std::vector<std::size_t> p;
  std::vector<std::size_t> r;
  /// Coefficient vectors over ys.
  std::vector<std::vector<Scalar>> coefficients;
  /// Check "1.6a/b": x = sum of omega_j.
  std::optional<FinVec> x;
  NormConfig norms;
};

struct JZResult {
  bool found = false;
  Blocking dom;
  Blocking cod;
  std::size_t explored = 0;
  /// Set when found is false: "NotFoundWithinTruncation".
  std::string failure;
};

/// Depth-first search over cut pairs (finest first) for blockings with
/// C ||Q~_j T P~_i|| < eps~_max(i,j) whenever j is not i or i-1. `budget`
/// bounds the number of candidate blocks examined.
JZResult jz_blocking(const QuotientModel& model, const EpsilonSchedule& schedule, std::size_t budget = 100000,
                     std::size_t min_blocks = 2, const NormConfig& config = {});

struct SelectResult {
  bool found = false;
  /// 1-based indices into the candidate list.
  std::vector<std::size_t> indices;
  /// Cuts in units of tilde blocks; shared by both blockings.
  std::vector<Index> cuts;
  Blocking dom;
  Blocking cod;
  std::vector<FinVec> ys;
  /// The verified off-diagonal decay and coefficient bound clauses.
  InequalityReport report;
  std::size_t explored = 0;
  /// Set when found is false: "InsufficientDecay".
  std::string failure;
};

/// Gliding-hump selection of a subsequence and a coarsening of the tilde
/// blockings satisfying the off-diagonal decay exactly and the coefficient
/// bound by exact linear programs.
/// Depth-first, finest cuts first; the first selection reaching max_blocks
/// or the last candidate wins, otherwise the longest valid one seen.
SelectResult select_subsequence(const QuotientModel& model, const EpsilonSchedule& schedule,
                                const Blocking& dom_tilde, const Blocking& cod_tilde,
                                const std::vector<FinVec>& candidates, std::size_t max_blocks,
                                std::size_t budget = 100000);

/// max |a_i| over the unit ball of span(ys), for each i; nullopt when the
/// vectors are linearly dependent (the maximum is unbounded).
std::optional<std::vector<Scalar>> coefficient_bounds(const std::vector<FinVec>& ys, const NormSpec& norm);

/// Hypotheses shared by all lemma checks: schedule validity, block decay of T,
/// decay of the ys and the coefficient bound.
InequalityReport check_hypotheses(const Scene& scene);

/// Lemma ids: "1.2", "1.3", "1.4", "1.5", "1.6a", "1.6b". Throws
/// SceneIncomplete when the scene lacks what the lemma quantifies over.
InequalityReport check_lemma(const std::string& id, const Scene& scene);
InequalityReport check_lemma(const std::string& id, const Scene& scene, const InequalityReport& hypotheses);

/// Sub-operator Q_[row_first, row_last] T P_[col_first, col_last] in block
/// indices (clipped to the blockings), other entries zeroed.
Matrix block_operator(const Matrix& t, const Blocking& cod, std::size_t row_first, std::size_t row_last,
                      const Blocking& dom, const std::vector<bool>& col_blocks);

}  // namespace wuq
