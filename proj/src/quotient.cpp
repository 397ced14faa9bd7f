#include "wuq/quotient.hpp"

#include <random>

#include "wuq/error.hpp"
#include "wuq/lp.hpp"

namespace wuq {

namespace {

FinVec random_vector(std::mt19937_64& engine, std::size_t dim) {
  FinVec x;
  for (std::size_t i = 1; i <= dim; ++i) {
    const long v = static_cast<long>(engine() % 9) - 4;
    if (v != 0) x.set(i, ratio(v, static_cast<long>(engine() % 3) + 1));
  }
  return x;
}

bool sign_invariant(const NormSpec& n, std::size_t dim, std::mt19937_64& engine, std::size_t samples) {
  for (std::size_t s = 0; s < samples; ++s) {
    FinVec x = random_vector(engine, dim);
    FinVec flipped;
    for (const auto& [i, v] : x.entries()) flipped.set(i, engine() % 2 ? v : Scalar(-v));
    if (norm(x, n) != norm(flipped, n)) return false;
  }
  return true;
}

bool bimonotone(const NormSpec& n, std::size_t dim, std::mt19937_64& engine, std::size_t samples) {
  for (std::size_t s = 0; s < samples; ++s) {
    FinVec z = random_vector(engine, dim);
    const Index a = engine() % dim + 1;
    const Index b = a + engine() % (dim - a + 1);
    if (norm(restrict_range(z, a, b), n) > norm(z, n)) return false;
  }
  return true;
}

bool is_identity(const Matrix& t) { return t.rows() == t.cols() && t == Matrix::identity(t.rows()); }

}  // namespace

QuotientModel::QuotientModel(Matrix t, NormSpec dom, NormSpec cod, std::optional<NormSpec> y_norm, Scalar c,
                             const ModelOptions& options)
    : t_(std::move(t)), dom_(std::move(dom)), cod_(std::move(cod)), y_(std::move(y_norm)), c_(std::move(c)) {
  if (t_.rows() == 0 || t_.cols() == 0) throw Error(ErrorCode::InvalidModel, "empty matrix");
  if (!dom_.polyhedral() || !cod_.polyhedral() || (y_ && !y_->polyhedral()))
    throw Error(ErrorCode::InvalidModel, "model norms must be sup, sum or Schreier norms");
  if (c_ <= 0) throw Error(ErrorCode::InvalidModel, "covering constant must be positive");
  std::mt19937_64 engine(options.seed);
  if (!sign_invariant(dom_, t_.cols(), engine, options.samples))
    throw Error(ErrorCode::InvalidModel, "domain norm failed the sampled sign-invariance check");
  if (!bimonotone(cod_, t_.rows(), engine, options.samples))
    throw Error(ErrorCode::InvalidModel, "codomain norm failed the sampled bimonotonicity check");

  if (options.covering == CoveringChoice::Minimal) {
    c_ = covering_constant(*this).value;
    covering_verified_ = true;
    return;
  }
  if (!y_) {
    if (c_ < 1) throw Error(ErrorCode::InvalidModel, "a quotient-induced y-norm needs C >= 1");
    covering_verified_ = true;
    return;
  }
  try {
    const Scalar bound = covering_upper_bound(*this, options.norms);
    covering_verified_ = bound <= c_;
    if (!covering_verified_) {
      bool exact = false;
      try {
        exact = covering_constant(*this).value == bound;
      } catch (const Error&) {
      }
      if (exact) throw Error(ErrorCode::InvalidModel, "T(C B_X) does not cover B_Y: need C >= " + format_scalar(bound));
    }
  } catch (const Error& e) {
    if (e.code() != ErrorCode::CapExceeded) throw;
  }
}

namespace {

struct Preimage {
  Scalar value;
  FinVec x;
};

Preimage solve_preimage(const QuotientModel& m, const FinVec& y) {
  const Matrix& t = m.matrix();
  if (y.max_index() > t.rows()) throw Error(ErrorCode::NotInRange, "y has coordinates beyond Z");
  if (is_identity(t)) return {norm(y, m.dom_norm()), y};
  const std::size_t n = t.cols();
  lp::Program program;
  program.num_vars = 2 * n + 1;
  program.objective.assign(2 * n + 1, Scalar(0));
  program.objective[2 * n] = -1;
  for (std::size_t r = 1; r <= t.rows(); ++r) {
    std::vector<Scalar> row(2 * n + 1);
    bool nonzero = false;
    for (std::size_t c = 1; c <= n; ++c) {
      row[c - 1] = t.at(r, c);
      row[n + c - 1] = -t.at(r, c);
      nonzero = nonzero || t.at(r, c) != 0;
    }
    if (!nonzero) {
      if (y.get(r) != 0) throw Error(ErrorCode::NotInRange, "y is not in the range of T");
      continue;
    }
    program.add(std::move(row), lp::Relation::Equal, y.get(r));
  }
  auto add_cut = [&](const IndexSet& leaves) {
    std::vector<Scalar> row(2 * n + 1);
    for (Index k : leaves) row[k - 1] = row[n + k - 1] = 1;
    row[2 * n] = -1;
    program.add(std::move(row), lp::Relation::LessEq, 0);
  };
  for (std::size_t k = 1; k <= n; ++k) add_cut(IndexSet{k});
  for (;;) {
    const lp::Result r = lp::solve(program);
    if (r.status == lp::Status::Infeasible) throw Error(ErrorCode::NotInRange, "y is not in the range of T");
    if (r.status != lp::Status::Optimal) throw Error(ErrorCode::InvalidArgument, "preimage program unbounded");
    FinVec x;
    for (std::size_t k = 1; k <= n; ++k) x.set(k, r.x[k - 1] - r.x[n + k - 1]);
    const NormCertificate cert = norm_eval(x, m.dom_norm());
    if (cert.value <= r.x[2 * n]) return {cert.value, std::move(x)};
    add_cut(cert.witness.leaf_set());
  }
}

}  // namespace

Scalar quotient_norm(const QuotientModel& m, const FinVec& y) { return solve_preimage(m, y).value; }

FinVec min_norm_preimage(const QuotientModel& m, const FinVec& y, const Scalar& slack) {
  if (slack < 1) throw Error(ErrorCode::InvalidArgument, "slack must be >= 1");
  return solve_preimage(m, y).x;
}

namespace {

/// Solves the square system a z = b; nullopt when singular.
std::optional<std::vector<Scalar>> solve_square(std::vector<std::vector<Scalar>> a, std::vector<Scalar> b) {
  const std::size_t d = b.size();
  for (std::size_t c = 0; c < d; ++c) {
    std::size_t p = c;
    while (p < d && a[p][c] == 0) ++p;
    if (p == d) return std::nullopt;
    std::swap(a[p], a[c]);
    std::swap(b[p], b[c]);
    for (std::size_t r = 0; r < d; ++r) {
      if (r == c || a[r][c] == 0) continue;
      const Scalar f = a[r][c] / a[c][c];
      for (std::size_t k = c; k < d; ++k) a[r][k] -= f * a[c][k];
      b[r] -= f * b[c];
    }
  }
  for (std::size_t c = 0; c < d; ++c) b[c] /= a[c][c];
  return b;
}

}  // namespace

CoveringResult covering_constant(const QuotientModel& m, std::size_t vertex_cap) {
  if (m.quotient_induced()) return {Scalar(1), FinVec{}};
  const Matrix& t = m.matrix();
  const NormSpec& ynorm = *m.y_norm();
  const std::vector<std::size_t> basis = t.pivot_columns();
  const std::size_t d = basis.size();

  std::vector<Index> rows;
  for (std::size_t r = 1; r <= t.rows(); ++r)
    for (std::size_t c : basis)
      if (t.at(r, c) != 0) {
        rows.push_back(r);
        break;
      }
  NormConfig caps;
  if (rows.size() > caps.operator_rows_cap) throw Error(ErrorCode::CapExceeded, "Y ball has too many facets to enumerate");

  // Facet functionals psi . (B z) <= 1 in the coordinates z of range(T).
  std::vector<std::vector<Scalar>> facets;
  for (const IndexSet& support : facet_supports(IndexSet(rows), ynorm)) {
    const auto& items = support.items();
    for (unsigned s = 0; s < (1u << items.size()); ++s) {
      std::vector<Scalar> f(d);
      for (std::size_t i = 0; i < items.size(); ++i) {
        const int sign = (s >> i & 1u) ? -1 : 1;
        for (std::size_t j = 0; j < d; ++j) f[j] += sign * t.at(items[i], basis[j]);
      }
      facets.push_back(std::move(f));
    }
  }
  const std::size_t count = facets.size();
  // Number of d-subsets of the facets, saturating at the cap.
  std::size_t combos = 1;
  for (std::size_t i = 0; i < d && combos <= vertex_cap; ++i) combos = combos * (count - i) / (i + 1);
  if (d > count || combos > vertex_cap) throw Error(ErrorCode::CapExceeded, "too many candidate vertices");

  CoveringResult best{Scalar(-1), FinVec{}};
  std::vector<std::vector<Scalar>> seen;
  std::vector<std::size_t> pick(d);
  for (std::size_t i = 0; i < d; ++i) pick[i] = i;
  for (;;) {
    std::vector<std::vector<Scalar>> a;
    for (std::size_t i : pick) a.push_back(facets[i]);
    if (auto z = solve_square(a, std::vector<Scalar>(d, Scalar(1)))) {
      bool inside = true;
      for (const auto& f : facets) {
        Scalar v = 0;
        for (std::size_t j = 0; j < d; ++j) v += f[j] * (*z)[j];
        if (v > 1) {
          inside = false;
          break;
        }
      }
      if (inside && std::find(seen.begin(), seen.end(), *z) == seen.end()) {
        seen.push_back(*z);
        FinVec y;
        for (std::size_t j = 0; j < d; ++j) y += (*z)[j] * t.column(basis[j]);
        const Scalar q = quotient_norm(m, y);
        if (q > best.value) best = {q, y};
      }
    }
    std::size_t i = d;
    while (i > 0 && pick[i - 1] == count - d + i - 1) --i;
    if (i == 0) break;
    ++pick[i - 1];
    for (std::size_t k = i; k < d; ++k) pick[k] = pick[k - 1] + 1;
  }
  if (best.value < 0) throw Error(ErrorCode::InvalidModel, "Y unit ball has no vertices");
  return best;
}

Scalar covering_upper_bound(const QuotientModel& m, const NormConfig& config) {
  try {
    return covering_constant(m).value;
  } catch (const Error& e) {
    if (e.code() != ErrorCode::CapExceeded) throw;
  }
  // A right inverse R (T R = I) maps B_Y into ||R|| B_X inside the preimage,
  // so C <= ||R||. R inverts T on its pivot columns.
  const Matrix& t = m.matrix();
  const auto pivots = t.pivot_columns();
  if (pivots.size() != t.rows()) throw Error(ErrorCode::CapExceeded, "covering constant not decidable at this size");
  Matrix square(t.rows(), t.rows());
  for (std::size_t r = 1; r <= t.rows(); ++r)
    for (std::size_t k = 1; k <= pivots.size(); ++k) square.at(r, k) = t.at(r, pivots[k - 1]);
  const auto inv = square.inverse();
  if (!inv) throw Error(ErrorCode::CapExceeded, "covering constant not decidable at this size");
  Matrix right(t.cols(), t.rows());
  for (std::size_t k = 1; k <= pivots.size(); ++k)
    for (std::size_t c = 1; c <= t.rows(); ++c) right.at(pivots[k - 1], c) = inv->at(k, c);
  const NormSpec& ynorm = *m.y_norm();
  Scalar bound = operator_norm_bounds(right, ynorm, m.dom_norm(), config).upper;
  if (ynorm == m.dom_norm() && t.rows() == t.cols()) {
    // ||T^{-1}|| <= ||I|| + ||T^{-1} - I||.
    const Scalar split = 1 + operator_norm_bounds(right - Matrix::identity(t.rows()), ynorm, ynorm, config).upper;
    if (split < bound) bound = split;
  }
  return bound;
}

}  // namespace wuq
