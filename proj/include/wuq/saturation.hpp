#pragma once

#include <cstddef>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "wuq/quotient.hpp"
#include "wuq/report.hpp"

namespace wuq {

/// An n-average: level 1 is lambda * sum_{k in F} x_k; level n+1 is lambda
/// times the sum of its children, each normalized before summing.
struct AverageTree {
  unsigned level = 1;
  Scalar lambda{1};
  IndexSet f;
  std::vector<AverageTree> children;
  friend bool operator==(const AverageTree&, const AverageTree&) = default;
};

/// Throws EmptyF, IndexOutOfRange, or PreconditionViolated when children do
/// not form a block basis.
FinVec build_average(const std::vector<FinVec>& xs, const AverageTree& tree, const NormSpec& norm);

/// max_F ||sum_{i in F} b_i|| / min_i ||b_i|| over nonempty F. Throws
/// SubsetCapExceeded beyond `cap` vectors.
Scalar c0_equiv_constant(const std::vector<FinVec>& bs, const NormSpec& norm, std::size_t cap = 20);
/// Same value for disjointly supported vectors under a 1-unconditional
/// norm, where the full sum is the largest subset sum.
Scalar c0_equiv_constant_disjoint(const std::vector<FinVec>& bs, const NormSpec& norm);

struct WitnessOptions {
  Scalar threshold{2};
  std::size_t min_blocks = 3;
  std::size_t max_blocks = 12;
  /// Start positions; powers of two up to the length when empty.
  std::vector<std::size_t> starts;
};

struct SaturationReport {
  bool found = false;
  /// 1-averages of ys, one per block, with their vectors.
  std::vector<AverageTree> averages;
  std::vector<FinVec> vectors;
  Scalar constant;
  std::size_t start = 0;
  std::size_t evaluations = 0;
  bool budget_exhausted = false;
};

/// Greedy search for a block basis of 1-averages of ys (in the Y norm)
/// equivalent to the unit vector basis of c0. `budget` counts norm
/// evaluations; exhausting it returns the best found so far, flagged.
SaturationReport s1_witness_search(const QuotientModel& model, const std::vector<FinVec>& ys, std::size_t budget,
                                   const WitnessOptions& options = {});

/// Recomputes a witness from raw data.
InequalityReport replay_witness(const QuotientModel& model, const std::vector<FinVec>& ys, const SaturationReport& report,
                                const WitnessOptions& options = {});

/// Quantities of the counting argument for a quotient T : S -> Y.
struct ContradictionTrace {
  std::shared_ptr<const QuotientModel> model;
  Scalar delta;
  std::size_t m = 0;
  Scalar lambda;
  /// eps_1, eps_2, ...; at least 2m entries.
  std::vector<Scalar> eps;
  std::vector<FinVec> zs;
  std::vector<FinVec> xs;
  std::vector<FinVec> omegas;
  /// i_1, ..., i_m, 1-based and distinct.
  std::vector<std::size_t> picks;
  /// Sets F at which the two-sided bound is invoked; the complements of
  /// the earlier picks when empty.
  std::vector<IndexSet> families;
  /// Values the trace asserts, by name; each is recomputed and compared.
  std::vector<std::pair<std::string, Scalar>> recorded;
};

struct ContradictionCheck {
  /// "CONTRADICTION", "ClauseFailed", "PreconditionGate".
  std::string verdict;
  /// hypotheses: the premise that supplies delta; clauses: everything else.
  InequalityReport report;
  /// Premise clauses that fail on the data (the refuted hypothesis).
  std::vector<Clause> refuted;
};

/// Names of the recorded values, in the order the generator emits them.
std::vector<std::string> recorded_names(std::size_t m);

/// Recomputes the recorded values from the trace's raw data.
std::vector<std::pair<std::string, Scalar>> compute_recorded(const ContradictionTrace& trace);

/// Throws TraceIncomplete when a quantity is missing.
ContradictionCheck theorem_b_contradiction_check(const ContradictionTrace& trace, std::size_t subset_cap = 16);

/// Consistent trace on T = 16 I over an N = 4m Schreier truncation: deep
/// unit vectors z_i, lambda = 1/(2m), x_i = lambda z_i / 16, omega = 0.
ContradictionTrace synthetic_trace(std::size_t m);

struct SpreadingRow {
  std::size_t start = 0;
  std::vector<std::size_t> tuple;
  Scalar value;
};

struct SpreadingResult {
  /// "l1-like", "c0-like" or "inconclusive".
  std::string classification;
  std::vector<SpreadingRow> table;
};

/// ||x_{n_1} + ... + x_{n_k}|| for consecutive and spaced tuples starting at
/// each depth. Throws InsufficientVectors, InvalidArgument when k < 3.
SpreadingResult spreading_probe(const std::vector<FinVec>& xs, const NormSpec& norm, std::size_t k,
                                const std::vector<std::size_t>& starts);

struct SubseqResult {
  bool found = false;
  /// 1-based indices into xs.
  std::vector<std::size_t> indices;
  Scalar constant;
  /// "TargetUnreachable" when found is false.
  std::string failure;
};

/// Greedy subsequence in the Schreier norm whose c0 constant stays <= target;
/// the j-th pick must have sup norm <= sup_bounds[j] when bounds are given.
SubseqResult c0_subseq_select(const std::vector<FinVec>& xs, const std::vector<Scalar>& sup_bounds, const Scalar& target,
                              std::size_t min_count = 3);

}  // namespace wuq
