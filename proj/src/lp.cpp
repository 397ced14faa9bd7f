#include "wuq/lp.hpp"

#include <limits>

#include "wuq/error.hpp"

namespace wuq::lp {

namespace {

constexpr std::size_t kNone = std::numeric_limits<std::size_t>::max();

class Tableau {
 public:
  Tableau(std::size_t rows, std::size_t cols) : a_(rows, std::vector<Scalar>(cols)), rhs_(rows), basis_(rows, kNone) {}

  std::size_t rows() const { return a_.size(); }
  std::size_t cols() const { return a_.empty() ? 0 : a_[0].size(); }
  Scalar& at(std::size_t r, std::size_t c) { return a_[r][c]; }
  Scalar& rhs(std::size_t r) { return rhs_[r]; }
  std::size_t& basic(std::size_t r) { return basis_[r]; }

  void pivot(std::size_t pr, std::size_t pc) {
    const Scalar inv = 1 / a_[pr][pc];
    for (auto& v : a_[pr])
      if (v != 0) v *= inv;
    rhs_[pr] *= inv;
    for (std::size_t r = 0; r < rows(); ++r) {
      if (r == pr || a_[r][pc] == 0) continue;
      const Scalar f = a_[r][pc];
      for (std::size_t c = 0; c < cols(); ++c)
        if (a_[pr][c] != 0) a_[r][c] -= f * a_[pr][c];
      rhs_[r] -= f * rhs_[pr];
    }
    basis_[pr] = pc;
  }

  void drop_row(std::size_t r) {
    a_.erase(a_.begin() + static_cast<std::ptrdiff_t>(r));
    rhs_.erase(rhs_.begin() + static_cast<std::ptrdiff_t>(r));
    basis_.erase(basis_.begin() + static_cast<std::ptrdiff_t>(r));
  }

  /// Maximizes cost . x over columns where allowed[c]; Bland's rule.
  /// Returns false on unboundedness.
  bool optimize(const std::vector<Scalar>& cost, const std::vector<bool>& allowed) {
    const std::size_t n = cols();
    for (;;) {
      std::size_t enter = kNone;
      for (std::size_t c = 0; c < n && enter == kNone; ++c) {
        if (!allowed[c] || is_basic(c)) continue;
        Scalar reduced = cost[c];
        for (std::size_t r = 0; r < rows(); ++r)
          if (a_[r][c] != 0 && cost[basis_[r]] != 0) reduced -= cost[basis_[r]] * a_[r][c];
        if (reduced > 0) enter = c;
      }
      if (enter == kNone) return true;
      std::size_t leave = kNone;
      Scalar best_ratio;
      for (std::size_t r = 0; r < rows(); ++r) {
        if (a_[r][enter] <= 0) continue;
        Scalar ratio = rhs_[r] / a_[r][enter];
        if (leave == kNone || ratio < best_ratio || (ratio == best_ratio && basis_[r] < basis_[leave])) {
          leave = r;
          best_ratio = ratio;
        }
      }
      if (leave == kNone) return false;
      pivot(leave, enter);
    }
  }

  bool is_basic(std::size_t c) const {
    for (auto b : basis_)
      if (b == c) return true;
    return false;
  }

  Scalar value_of(std::size_t c) const {
    for (std::size_t r = 0; r < basis_.size(); ++r)
      if (basis_[r] == c) return rhs_[r];
    return 0;
  }

 private:
  std::vector<std::vector<Scalar>> a_;
  std::vector<Scalar> rhs_;
  std::vector<std::size_t> basis_;
};

}  // namespace

Result solve(const Program& program) {
  const std::size_t n = program.num_vars;
  if (program.objective.size() != n) throw Error(ErrorCode::LengthMismatch, "objective length differs from num_vars");
  const std::size_t m = program.constraints.size();

  std::size_t slack_count = 0, artificial_count = 0;
  for (const auto& con : program.constraints) {
    if (con.coeffs.size() != n) throw Error(ErrorCode::LengthMismatch, "constraint length differs from num_vars");
    const bool flip = con.rhs < 0;
    Relation rel = con.relation;
    if (flip && rel != Relation::Equal) rel = rel == Relation::LessEq ? Relation::GreaterEq : Relation::LessEq;
    if (rel != Relation::Equal) ++slack_count;
    if (rel != Relation::LessEq) ++artificial_count;
  }
  const std::size_t first_slack = n;
  const std::size_t first_art = n + slack_count;
  const std::size_t total = first_art + artificial_count;

  Tableau t(m, total);
  std::size_t next_slack = first_slack, next_art = first_art;
  for (std::size_t r = 0; r < m; ++r) {
    const auto& con = program.constraints[r];
    const bool flip = con.rhs < 0;
    Relation rel = con.relation;
    if (flip && rel != Relation::Equal) rel = rel == Relation::LessEq ? Relation::GreaterEq : Relation::LessEq;
    for (std::size_t c = 0; c < n; ++c) t.at(r, c) = flip ? Scalar(-con.coeffs[c]) : con.coeffs[c];
    t.rhs(r) = flip ? Scalar(-con.rhs) : con.rhs;
    if (rel == Relation::LessEq) {
      t.at(r, next_slack) = 1;
      t.basic(r) = next_slack++;
    } else {
      if (rel == Relation::GreaterEq) t.at(r, next_slack++) = -1;
      t.at(r, next_art) = 1;
      t.basic(r) = next_art++;
    }
  }

  std::vector<bool> allowed(total, true);
  if (artificial_count > 0) {
    std::vector<Scalar> phase1(total);
    for (std::size_t c = first_art; c < total; ++c) phase1[c] = -1;
    t.optimize(phase1, allowed);
    for (std::size_t c = first_art; c < total; ++c)
      if (t.value_of(c) != 0) return {Status::Infeasible, 0, {}};
    // Drive zero-level artificials out of the basis, dropping redundant rows.
    for (std::size_t r = 0; r < t.rows();) {
      if (t.basic(r) < first_art) {
        ++r;
        continue;
      }
      std::size_t col = kNone;
      for (std::size_t c = 0; c < first_art && col == kNone; ++c)
        if (t.at(r, c) != 0 && !t.is_basic(c)) col = c;
      if (col == kNone) {
        t.drop_row(r);
      } else {
        t.pivot(r, col);
        ++r;
      }
    }
    for (std::size_t c = first_art; c < total; ++c) allowed[c] = false;
  }

  std::vector<Scalar> cost(total);
  for (std::size_t c = 0; c < n; ++c) cost[c] = program.objective[c];
  if (!t.optimize(cost, allowed)) return {Status::Unbounded, 0, {}};

  Result result{Status::Optimal, 0, std::vector<Scalar>(n)};
  for (std::size_t c = 0; c < n; ++c) {
    result.x[c] = t.value_of(c);
    result.value += program.objective[c] * result.x[c];
  }
  return result;
}

}  // namespace wuq::lp
