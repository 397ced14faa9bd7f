#pragma once

#include <optional>
#include <string>
#include <vector>

#include "wuq/scalar.hpp"

namespace wuq {

/// Closed-form rule for eps_i beyond the stored prefix. eps_tilde beyond the
/// prefix always follows eps~_p = min(eps_{p+2} / (8(p+1)), eps~_{p-1} / 4).
struct TailDescriptor {
  enum class Kind { FactorialDamped, Geometric };
  Kind kind = Kind::FactorialDamped;
  /// FactorialDamped: eps_i = c r^i / (i+3)!.  Geometric: eps_i = c r^i.
  Scalar c;
  Scalar r;

  static TailDescriptor factorial_damped(Scalar c, Scalar r) { return {Kind::FactorialDamped, std::move(c), std::move(r)}; }
  static TailDescriptor geometric(Scalar c, Scalar r) { return {Kind::Geometric, std::move(c), std::move(r)}; }
  /// eps_i for i >= -1.
  Scalar eps(long i) const;
  std::string tag() const;
  friend bool operator==(const TailDescriptor&, const TailDescriptor&) = default;
};

class EpsilonSchedule {
 public:
  EpsilonSchedule() = default;
  /// `eps` holds eps_{-1}..eps_L; `eps_tilde` holds eps~_0..eps~_L.
  EpsilonSchedule(std::vector<Scalar> eps, std::vector<Scalar> eps_tilde, std::optional<TailDescriptor> tail);

  /// L, the last stored index.
  std::size_t length() const { return eps_tilde_.size() - 1; }
  /// eps_i for i >= -1, through the tail descriptor beyond L.
  Scalar eps(long i) const;
  /// eps~_p for p >= 0, through the min-rule beyond L.
  Scalar eps_tilde(std::size_t p) const;
  const std::vector<Scalar>& eps_prefix() const { return eps_; }
  const std::vector<Scalar>& eps_tilde_prefix() const { return eps_tilde_; }
  const std::optional<TailDescriptor>& tail() const { return tail_; }

  /// Multiplies the stored eps~ prefix by `factor` (test instrument for
  /// breaking hypotheses deliberately).
  EpsilonSchedule with_scaled_tilde(const Scalar& factor) const;

  friend bool operator==(const EpsilonSchedule&, const EpsilonSchedule&) = default;

 private:
  std::vector<Scalar> eps_;
  std::vector<Scalar> eps_tilde_;
  std::optional<TailDescriptor> tail_;
};

EpsilonSchedule build_schedule(std::size_t length);
/// Same construction for an arbitrary descriptor.
EpsilonSchedule build_schedule(std::size_t length, const TailDescriptor& tail);

struct ClauseResult {
  std::string name;
  bool pass = false;
  /// Relative margin 1 - lhs/rhs; for clauses quantified over all p beyond
  /// the prefix, 1 minus the certified bound on that ratio.
  Scalar margin;
};

struct ScheduleReport {
  bool pass = false;
  std::vector<ClauseResult> clauses;
  /// First failing clause when pass is false, otherwise the clause with the
  /// smallest margin.
  std::string binding;
  Scalar binding_margin;
};

/// Throws TailDescriptorMissing when no descriptor is attached.
ScheduleReport validate_schedule(const EpsilonSchedule& s);

}  // namespace wuq
