#pragma once

#include <cstddef>
#include <vector>

#include "wuq/scalar.hpp"

namespace wuq::lp {

enum class Relation { LessEq, Equal, GreaterEq };

struct Constraint {
  std::vector<Scalar> coeffs;
  Relation relation = Relation::LessEq;
  Scalar rhs;
};

/// maximize objective . x  subject to constraints, x >= 0.
struct Program {
  std::size_t num_vars = 0;
  std::vector<Scalar> objective;
  std::vector<Constraint> constraints;

  void add(std::vector<Scalar> coeffs, Relation rel, Scalar rhs) {
    constraints.push_back({std::move(coeffs), rel, std::move(rhs)});
  }
};

enum class Status { Optimal, Infeasible, Unbounded };

struct Result {
  Status status = Status::Infeasible;
  Scalar value;
  std::vector<Scalar> x;
};

/// Exact two-phase primal simplex with Bland's rule (terminates without
/// cycling). Intended for desk-size programs.
Result solve(const Program& program);

}  // namespace wuq::lp
