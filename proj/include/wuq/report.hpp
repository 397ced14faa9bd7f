#pragma once

#include <string>
#include <vector>

#include "wuq/scalar.hpp"

namespace wuq {

/// One instantiated inequality, compared exactly.
struct Clause {
  enum class Kind { Less, LessEq };
  std::string description;
  Scalar lhs;
  Scalar rhs;
  Kind kind = Kind::Less;
  bool pass = false;
  /// Indices the clause was instantiated at (blocks, vectors, windows).
  std::vector<long> witness;

  static Clause less(std::string description, Scalar lhs, Scalar rhs, std::vector<long> witness = {});
  static Clause less_eq(std::string description, Scalar lhs, Scalar rhs, std::vector<long> witness = {});
  /// rhs - lhs.
  Scalar margin() const { return rhs - lhs; }
};

struct InequalityReport {
  std::string lemma;
  std::vector<Clause> hypotheses;
  std::vector<Clause> clauses;

  bool hypotheses_hold() const;
  bool clauses_hold() const;
  /// "pass", "fail" or "hypotheses violated".
  std::string verdict() const;
  /// First failing clause (hypotheses first), or nullptr.
  const Clause* first_failure() const;
  /// Smallest clause margin; zero when there are no clauses.
  Scalar min_margin() const;
  void append(const InequalityReport& other);
};

}  // namespace wuq
