#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "wuq/blocking.hpp"
#include "wuq/flatten.hpp"
#include "wuq/report.hpp"

namespace wuq {

/// One coefficient vector carried through the unconditionality argument.
struct UncondRun {
  /// Coefficients over the selected vectors, scaled so ||sum a_i y_{p_i}|| = 1.
  std::vector<Scalar> a;
  /// Scale applied to the supplied coefficients.
  Scalar scale;
  FinVec x;
  /// r_1 < ... < r_{s-1}; r_0 = 1 and the last piece runs to the end.
  std::vector<std::size_t> r;
  /// xbar_i, i = 1..s, each decomposed over the domain blocking.
  std::vector<BlockVector> xbar;
  /// Flatten plans, one per flattened window i = 1..s-1.
  std::vector<RampPlan> plans;
  /// Per-piece estimate, its three sub-estimates, and the final chain.
  InequalityReport report;
  Scalar measured;
  std::vector<int> best_signs;
};

struct UncondCertificate {
  /// p_1 < ... < p_s, 1-based block indices into the scene's ys.
  std::vector<std::size_t> p;
  Scalar covering;
  /// Certified lower bound on ||T||; the bound is 1 + C times this.
  Scalar t_norm_lower;
  Scalar bound;
  std::vector<UncondRun> runs;

  /// Every clause holds and every measured maximum is <= bound.
  bool pass() const;
};

struct ExtractOptions {
  FlattenOptions flatten;
  /// Upper limit on the number of selected indices (sign enumeration).
  std::size_t max_selected = 12;
  /// Gap widenings tried after a flatten failure.
  std::size_t widen_cap = 4;
};

struct ExtractResult {
  bool found = false;
  UncondCertificate certificate;
  /// "FlattenFailed" when found is false.
  std::string failure;
  /// Window index i of the failed flatten and its certificate.
  std::size_t failed_window = 0;
  std::optional<FlattenResult> failed_flatten;
};

/// Smallest p_1 < p_2 < ... with p_1 = 2, p_{i+1} - 1 >= m(p_i; eps_{p_i}) and
/// p_s < L. `extra` widens each gap by that many blocks.
std::vector<std::size_t> plan_indices(const EpsilonSchedule& schedule, std::size_t blocks, std::size_t max_selected,
                                      const std::vector<std::size_t>& extra = {});

/// Coefficient vectors used when none are supplied: unit vectors, all ones,
/// alternating signs and harmonic weights.
std::vector<std::vector<Scalar>> default_coefficients(std::size_t s);

/// Runs the unconditionality argument on the scene's ys (already selected,
/// one per codomain block) for each coefficient vector over y_{p_1}..y_{p_s}.
/// Throws TooFewIndices when fewer than three indices fit.
ExtractResult extract_unconditional(const Scene& scene, std::vector<std::vector<Scalar>> coefficient_sets,
                                    const ExtractOptions& options = {});

/// Replays one run against the certificate's indices from raw data.
InequalityReport replay_run(const Scene& scene, const UncondCertificate& cert, const UncondRun& run);

struct Prop19Result {
  bool found = false;
  std::vector<std::size_t> p;
  /// r_0 = 0 < p_1 < r_1 < ... ; size s + 1.
  std::vector<std::size_t> r;
  /// x_i, i = 1..s, with x = sum x_i.
  std::vector<FinVec> xs;
  FinVec x;
  InequalityReport report;
  std::string failure;
};

/// Block basis (x_i) with ||T x_i - a_i y_{p_i}|| < target_i and ||x|| <= 2C.
/// Targets default to eps_i. Throws PreconditionViolated when ||sum a_i
/// y_{p_i}|| > 2.
Prop19Result prop19_decompose(const Scene& scene, const std::vector<std::size_t>& p, const std::vector<Scalar>& a,
                              const std::vector<Scalar>& targets = {}, const ExtractOptions& options = {});

struct C0FixReport {
  bool found = false;
  /// "NotC0Like" or a decomposition failure.
  std::string failure;
  /// Offending coefficient vector when the precondition fails.
  std::vector<Scalar> violation;
  std::vector<std::size_t> p;
  std::vector<std::size_t> depths;
  /// Per depth n: r^n_0..r^n_n and x^n_1..x^n_n.
  std::vector<std::vector<std::size_t>> r;
  std::vector<std::vector<FinVec>> xs;
  /// True when, for every i, r_i^n and x_i^n agree across all depths n >= i.
  bool stable = false;
  /// Smallest depth from which every later decomposition agrees.
  std::size_t stable_from = 0;
  /// sup_n ||sum_{i<=n} x_i^n||.
  Scalar uniform_bound;
  /// omega_i and the corrected preimages x_i + omega_i at the deepest depth.
  std::vector<FinVec> omegas;
  std::vector<FinVec> corrected;
  InequalityReport report;
};

struct ProbeOptions {
  /// Cap on 3^s precondition checks; beyond it the sign vectors are sampled.
  std::size_t exhaustive_cap = 20000;
  std::size_t samples = 4000;
  std::uint64_t seed = 7;
};

C0FixReport c0_fix_probe(const Scene& scene, const std::vector<std::size_t>& p, const std::vector<std::size_t>& depths,
                         const ProbeOptions& options = {});

}  // namespace wuq
