#include "wuq/report.hpp"

namespace wuq {

Clause Clause::less(std::string description, Scalar lhs, Scalar rhs, std::vector<long> witness) {
  Clause c{std::move(description), std::move(lhs), std::move(rhs), Kind::Less, false, std::move(witness)};
  c.pass = c.lhs < c.rhs;
  return c;
}

Clause Clause::less_eq(std::string description, Scalar lhs, Scalar rhs, std::vector<long> witness) {
  Clause c{std::move(description), std::move(lhs), std::move(rhs), Kind::LessEq, false, std::move(witness)};
  c.pass = c.lhs <= c.rhs;
  return c;
}

bool InequalityReport::hypotheses_hold() const {
  for (const auto& c : hypotheses)
    if (!c.pass) return false;
  return true;
}

bool InequalityReport::clauses_hold() const {
  for (const auto& c : clauses)
    if (!c.pass) return false;
  return true;
}

std::string InequalityReport::verdict() const {
  if (!hypotheses_hold()) return "hypotheses violated";
  return clauses_hold() ? "pass" : "fail";
}

const Clause* InequalityReport::first_failure() const {
  for (const auto& c : hypotheses)
    if (!c.pass) return &c;
  for (const auto& c : clauses)
    if (!c.pass) return &c;
  return nullptr;
}

Scalar InequalityReport::min_margin() const {
  if (clauses.empty()) return 0;
  Scalar m = clauses.front().margin();
  for (const auto& c : clauses)
    if (c.margin() < m) m = c.margin();
  return m;
}

void InequalityReport::append(const InequalityReport& other) {
  hypotheses.insert(hypotheses.end(), other.hypotheses.begin(), other.hypotheses.end());
  clauses.insert(clauses.end(), other.clauses.begin(), other.clauses.end());
}

}  // namespace wuq
