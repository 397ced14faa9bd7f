#pragma once

#include <cstddef>
#include <memory>
#include <string>
#include <vector>

#include "wuq/matrix.hpp"
#include "wuq/scalar.hpp"
#include "wuq/seqvec.hpp"

namespace wuq {

class QuotientModel;

/// A computable norm on finitely supported sequences.
class NormSpec {
 public:
  enum class Kind { Sup, Sum, Schreier, Quotient };

  static NormSpec sup() { return NormSpec(Kind::Sup, 0); }
  static NormSpec sum() { return NormSpec(Kind::Sum, 0); }
  /// Level n >= 1 Schreier norm; level 1 is the Schreier space norm.
  static NormSpec schreier(unsigned level);
  /// Quotient-induced norm; `model` may be null (evaluation then throws
  /// QuotientUnavailable).
  static NormSpec quotient(std::shared_ptr<const QuotientModel> model);

  /// Parses "sup", "sum", "schreier:<n>" (and "schreier" for level 1).
  static NormSpec parse(const std::string& tag);
  std::string tag() const;

  Kind kind() const { return kind_; }
  unsigned level() const { return level_; }
  bool polyhedral() const { return kind_ != Kind::Quotient; }
  const std::shared_ptr<const QuotientModel>& model() const { return model_; }

  friend bool operator==(const NormSpec& a, const NormSpec& b) {
    return a.kind_ == b.kind_ && a.level_ == b.level_ && a.model_ == b.model_;
  }

 private:
  NormSpec(Kind kind, unsigned level) : kind_(kind), level_(level) {}
  Kind kind_;
  unsigned level_;
  std::shared_ptr<const QuotientModel> model_;
};

/// Admissible family witnessing a norm value. A level-1 node holds an index
/// set F with |F| <= min F; a level n+1 node holds p successive level-n
/// children E_1 < ... < E_p with p <= min E_1. Sup and Sum witnesses are
/// level-1 nodes without the cardinality constraint.
struct AdmissibleTree {
  unsigned level = 1;
  IndexSet leaves;
  std::vector<AdmissibleTree> children;

  IndexSet leaf_set() const;
  /// Schreier admissibility at every node.
  bool admissible() const;
  friend bool operator==(const AdmissibleTree&, const AdmissibleTree&) = default;
};

struct NormCertificate {
  Scalar value;
  AdmissibleTree witness;
  /// Sign of x at each leaf, aligned with witness.leaf_set().
  std::vector<int> signs;
  /// Quotient norms only: a minimizing preimage and its certificate.
  FinVec preimage;
  std::shared_ptr<NormCertificate> preimage_certificate;
};

/// Enumeration caps; configuration, not constants baked into code paths.
struct NormConfig {
  std::size_t oracle_support_cap = 12;
  std::size_t sign_cap = 20;
  std::size_t operator_rows_cap = 12;
};

NormCertificate norm_eval(const FinVec& x, const NormSpec& n);
Scalar norm(const FinVec& x, const NormSpec& n);

/// Replays a certificate: the witness is admissible for the norm, the signs
/// match x, and the signed sum reproduces the value exactly.
bool replay_certificate(const FinVec& x, const NormSpec& n, const NormCertificate& cert);

/// Exhaustive enumeration over arbitrary admissible families (not only
/// intervals). Test oracle; throws CapExceeded beyond the support cap.
Scalar norm_brute_oracle(const FinVec& x, const NormSpec& n, const NormConfig& config = {});

struct DualResult {
  Scalar value;
  /// Unit-ball point attaining f(x) = value.
  FinVec maximizer;
  std::size_t cuts = 0;
};

/// max { f(x) : ||x||_n <= 1 } by constraint generation with norm_eval as the
/// separation oracle. Throws NonPolyhedral for quotient norms.
DualResult dual_norm(const FinVec& f, const NormSpec& n);

struct OperatorNormBounds {
  Scalar lower;
  Scalar upper;
  bool exact = false;
};

/// Exact max ||Ax||_cod over ||x||_dom <= 1: the maximum over codomain facet
/// functionals psi of dual_norm(A^T psi). Throws CapExceeded when the
/// nonzero rows exceed the configured cap.
Scalar operator_norm(const Matrix& a, const NormSpec& dom, const NormSpec& cod, const NormConfig& config = {});

/// Exact when within the cap; otherwise a certified bracket
/// max_k ||A e_k|| <= ||A|| <= upper, where upper is the smaller of
/// sum_k dual(row_k) and, for equal norms on both sides, a sum over the
/// diagonals of A of their largest entries.
OperatorNormBounds operator_norm_bounds(const Matrix& a, const NormSpec& dom, const NormSpec& cod,
                                        const NormConfig& config = {});

/// Maximal admissible subsets of `rows` for the codomain norm: the facet
/// supports of its unit ball restricted to those coordinates.
std::vector<IndexSet> facet_supports(const IndexSet& rows, const NormSpec& cod);

enum class UncondMode { Fixed, Searched };

struct UncondResult {
  Scalar value;
  /// Searched mode reports a lower bound on the basis constant.
  bool lower_bound = false;
  std::vector<int> best_signs;
  std::vector<Scalar> best_coefficients;
};

/// Fixed mode: max over sign vectors of ||sum d_i a_i x_i|| / ||sum a_i x_i||.
/// Searched mode: max of fixed mode over grid^len coefficient vectors.
UncondResult uncond_constant(const std::vector<FinVec>& xs, const std::vector<Scalar>& coefficients,
                             const NormSpec& n, UncondMode mode, const std::vector<Scalar>& grid = {},
                             const NormConfig& config = {});

}  // namespace wuq
