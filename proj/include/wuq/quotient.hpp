#pragma once

#include <cstdint>
#include <optional>

#include "wuq/matrix.hpp"
#include "wuq/norms.hpp"

namespace wuq {

/// How C is fixed when a model is built. `Supplied` takes the caller's value
/// and checks the covering certificate; `Minimal` replaces it by the
/// computed covering constant.
enum class CoveringChoice { Supplied, Minimal };

struct ModelOptions {
  CoveringChoice covering = CoveringChoice::Supplied;
  std::size_t samples = 16;
  std::uint64_t seed = 7;
  NormConfig norms;
};

/// Finite model of a surjection T : X -> Y with Y = range(T) inside the
/// coordinate space Z. A missing y-norm means the quotient-induced norm.
class QuotientModel {
 public:
  QuotientModel(Matrix t, NormSpec dom, NormSpec cod, std::optional<NormSpec> y_norm, Scalar c,
                const ModelOptions& options = {});

  const Matrix& matrix() const { return t_; }
  const NormSpec& dom_norm() const { return dom_; }
  const NormSpec& cod_norm() const { return cod_; }
  /// The supplied y-norm; nullopt when quotient-induced.
  const std::optional<NormSpec>& y_norm() const { return y_; }
  bool quotient_induced() const { return !y_; }
  const Scalar& covering() const { return c_; }
  /// False when the covering certificate could not be decided at this size.
  bool covering_verified() const { return covering_verified_; }

 private:
  Matrix t_;
  NormSpec dom_;
  NormSpec cod_;
  std::optional<NormSpec> y_;
  Scalar c_;
  bool covering_verified_ = false;
};

/// min { ||x||_dom : Tx = y } by exact constraint generation. Throws NotInRange.
Scalar quotient_norm(const QuotientModel& m, const FinVec& y);

/// Exact preimage with ||x||_dom <= slack * quotient_norm(m, y); slack >= 1.
FinVec min_norm_preimage(const QuotientModel& m, const FinVec& y, const Scalar& slack);

struct CoveringResult {
  Scalar value;
  /// Extreme point of the Y unit ball attaining the value.
  FinVec binding;
};

/// Smallest C with T(C B_X) containing B_Y, by enumerating the vertices of
/// the Y unit ball inside range(T). Throws CapExceeded when that is not
/// enumerable within `vertex_cap` candidate bases.
CoveringResult covering_constant(const QuotientModel& m, std::size_t vertex_cap = 200000);

/// Certified upper bound on the covering constant: exact when enumerable,
/// otherwise through the norm of a right inverse of T. Throws CapExceeded.
Scalar covering_upper_bound(const QuotientModel& m, const NormConfig& config = {});

}  // namespace wuq
