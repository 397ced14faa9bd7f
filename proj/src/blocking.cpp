#include "wuq/blocking.hpp"

#include <algorithm>
#include <functional>

#include "wuq/error.hpp"
#include "wuq/lp.hpp"

namespace wuq {

Matrix block_operator(const Matrix& t, const Blocking& cod, std::size_t row_first, std::size_t row_last,
                      const Blocking& dom, const std::vector<bool>& col_blocks) {
  row_first = std::max<std::size_t>(row_first, 1);
  row_last = std::min(row_last, cod.block_count());
  std::vector<bool> keep(t.cols(), false);
  for (std::size_t b = 1; b <= dom.block_count() && b <= col_blocks.size(); ++b)
    if (col_blocks[b - 1])
      for (Index c = dom.first_of(b); c <= dom.last_of(b) && c <= t.cols(); ++c) keep[c - 1] = true;
  if (row_first > row_last) return Matrix(t.rows(), t.cols());
  return t.masked(cod.first_of(row_first), cod.last_of(row_last), keep);
}

namespace {

std::vector<bool> single_block(std::size_t count, std::size_t i) {
  std::vector<bool> v(count, false);
  if (i >= 1 && i <= count) v[i - 1] = true;
  return v;
}

/// Certified upper bound on C ||A||.
Scalar scaled_norm(const QuotientModel& m, const Matrix& a, const NormConfig& config) {
  if (a.is_zero()) return 0;
  return m.covering() * operator_norm_bounds(a, m.dom_norm(), m.cod_norm(), config).upper;
}

NormSpec y_norm_of(const std::shared_ptr<const QuotientModel>& m) {
  return m->y_norm() ? *m->y_norm() : NormSpec::quotient(m);
}

Scalar block_norm(const Blocking& b, std::size_t first, std::size_t last, const FinVec& y, const NormSpec& n) {
  return norm(project_blocks(b, first, last, y), n);
}

}  // namespace

JZResult jz_blocking(const QuotientModel& model, const EpsilonSchedule& schedule, std::size_t budget,
                     std::size_t min_blocks, const NormConfig& config) {
  const Matrix& t = model.matrix();
  JZResult result;
  std::vector<Index> dom_cuts{0}, cod_cuts{0};
  bool exhausted = false;

  auto valid_last = [&]() {
    const Blocking dom(dom_cuts), cod(cod_cuts);
    const std::size_t i = dom.block_count();
    const Scalar bound = schedule.eps_tilde(i);
    for (std::size_t j = 1; j + 1 < i; ++j)
      if (scaled_norm(model, block_operator(t, cod, j, j, dom, single_block(i, i)), config) >= bound) return false;
    for (std::size_t j = 1; j < i; ++j)
      if (scaled_norm(model, block_operator(t, cod, i, i, dom, single_block(i, j)), config) >= bound) return false;
    return true;
  };

  std::function<bool()> dfs = [&]() -> bool {
    if (dom_cuts.back() == t.cols() && cod_cuts.back() == t.rows()) return dom_cuts.size() - 1 >= min_blocks;
    for (Index d = dom_cuts.back() + 1; d <= t.cols(); ++d)
      for (Index c = cod_cuts.back() + 1; c <= t.rows(); ++c) {
        if ((d == t.cols()) != (c == t.rows())) continue;
        if (++result.explored > budget) {
          exhausted = true;
          return false;
        }
        dom_cuts.push_back(d);
        cod_cuts.push_back(c);
        if (valid_last() && dfs()) return true;
        dom_cuts.pop_back();
        cod_cuts.pop_back();
        if (exhausted) return false;
      }
    return false;
  };

  if (dfs()) {
    result.found = true;
    result.dom = Blocking(dom_cuts);
    result.cod = Blocking(cod_cuts);
  } else {
    result.failure = "NotFoundWithinTruncation";
  }
  return result;
}

std::optional<std::vector<Scalar>> coefficient_bounds(const std::vector<FinVec>& ys, const NormSpec& norm) {
  const std::size_t s = ys.size();
  std::vector<Index> coords;
  for (const auto& y : ys)
    for (Index i : y.support()) coords.push_back(i);
  std::sort(coords.begin(), coords.end());
  coords.erase(std::unique(coords.begin(), coords.end()), coords.end());

  // Variables a+_k, a-_k; z_r(a) = sum_k (a+_k - a-_k) y_k(r).
  auto row_for = [&](const std::vector<std::pair<Index, int>>& signed_coords) {
    std::vector<Scalar> row(2 * s);
    for (const auto& [r, sg] : signed_coords)
      for (std::size_t k = 0; k < s; ++k) {
        const Scalar v = ys[k].get(r);
        row[k] += sg * v;
        row[s + k] -= sg * v;
      }
    return row;
  };
  lp::Program base;
  base.num_vars = 2 * s;
  for (Index r : coords) {
    base.add(row_for({{r, 1}}), lp::Relation::LessEq, 1);
    base.add(row_for({{r, -1}}), lp::Relation::LessEq, 1);
  }
  std::vector<Scalar> out;
  for (std::size_t i = 0; i < s; ++i) {
    lp::Program program = base;
    program.objective.assign(2 * s, Scalar(0));
    program.objective[i] = 1;
    program.objective[s + i] = -1;
    for (;;) {
      const lp::Result r = lp::solve(program);
      if (r.status == lp::Status::Unbounded) return std::nullopt;
      if (r.status != lp::Status::Optimal) throw Error(ErrorCode::InvalidArgument, "coefficient program infeasible");
      FinVec z;
      for (std::size_t k = 0; k < s; ++k) z += (r.x[k] - r.x[s + k]) * ys[k];
      const NormCertificate cert = norm_eval(z, norm);
      if (cert.value <= 1) {
        out.push_back(r.value);
        break;
      }
      std::vector<std::pair<Index, int>> cut;
      std::size_t k = 0;
      for (Index leaf : cert.witness.leaf_set()) cut.emplace_back(leaf, cert.signs[k++]);
      program.add(row_for(cut), lp::Relation::LessEq, 1);
    }
  }
  return out;
}

SelectResult select_subsequence(const QuotientModel& model, const EpsilonSchedule& schedule,
                                const Blocking& dom_tilde, const Blocking& cod_tilde,
                                const std::vector<FinVec>& candidates, std::size_t max_blocks, std::size_t budget) {
  if (dom_tilde.block_count() != cod_tilde.block_count())
    throw Error(ErrorCode::LengthMismatch, "tilde blockings differ in block count");
  const NormSpec& zn = model.cod_norm();
  const std::size_t total = cod_tilde.block_count();
  SelectResult result;
  std::vector<std::size_t> chosen;
  std::vector<Index> cuts{0};
  std::vector<std::size_t> best;
  std::vector<Index> best_cuts;
  bool exhausted = false;

  auto coords_of = [&](std::size_t block, bool extended) {
    const Index lo = cod_tilde.cuts()[cuts[block - 1]] + 1;
    const Index hi = extended ? cod_tilde.last_index() : cod_tilde.cuts()[cuts[block]];
    return std::make_pair(lo, hi);
  };
  auto mass = [&](std::size_t vec, std::size_t block, bool extended) {
    const auto [lo, hi] = coords_of(block, extended);
    return norm(restrict_range(candidates[vec - 1], lo, hi), zn);
  };
  auto valid_last = [&]() {
    const std::size_t i = chosen.size();
    const Scalar bound = schedule.eps_tilde(i);
    for (std::size_t k = 1; k < i; ++k) {
      if (mass(chosen[k - 1], i, false) >= bound) return false;
      if (mass(chosen[i - 1], k, false) >= bound) return false;
    }
    return true;
  };
  auto finalize = [&]() {
    const std::size_t count = chosen.size();
    if (count < 2) return false;
    const Scalar bound = schedule.eps_tilde(count);
    for (std::size_t k = 1; k < count; ++k)
      if (mass(chosen[k - 1], count, true) >= bound) return false;
    std::vector<FinVec> ys;
    for (auto v : chosen) ys.push_back(candidates[v - 1]);
    const auto bounds = coefficient_bounds(ys, zn);
    if (!bounds) return false;
    for (const auto& b : *bounds)
      if (b > 2) return false;
    return true;
  };

  std::function<bool()> dfs = [&]() -> bool {
    if (chosen.size() < max_blocks) {
      const std::size_t first_v = chosen.empty() ? 1 : chosen.back() + 1;
      for (std::size_t v = first_v; v <= candidates.size(); ++v)
        for (Index q = cuts.back() + 1; q <= total; ++q) {
          if (++result.explored > budget) {
            exhausted = true;
            return false;
          }
          chosen.push_back(v);
          cuts.push_back(q);
          if (valid_last() && dfs()) return true;
          chosen.pop_back();
          cuts.pop_back();
          if (exhausted) return false;
        }
    }
    // A valid selection that could still grow is remembered and the search
    // goes on; the longest one is used if no full-length selection exists.
    if (!finalize()) return false;
    if (chosen.size() > best.size()) {
      best = chosen;
      best_cuts = cuts;
    }
    return chosen.size() == max_blocks || chosen.back() == candidates.size();
  };

  for (const auto& y : candidates)
    if (y.max_index() > cod_tilde.last_index())
      throw Error(ErrorCode::SupportOverflow, "candidate vector beyond the codomain blocking");
  if (!dfs()) {
    if (best.empty()) {
      result.failure = "InsufficientDecay";
      return result;
    }
    chosen = best;
    cuts = best_cuts;
  }
  cuts.back() = total;
  result.found = true;
  result.indices = chosen;
  result.cuts = cuts;
  result.dom = dom_tilde.coarsen(cuts);
  result.cod = cod_tilde.coarsen(cuts);
  for (auto v : chosen) result.ys.push_back(candidates[v - 1]);

  const std::size_t count = chosen.size();
  result.report.lemma = "selection";
  for (std::size_t i = 1; i <= count; ++i)
    for (std::size_t j = 1; j <= count; ++j)
      if (i != j)
        result.report.clauses.push_back(Clause::less("(1.4) ||Q_j y_i|| < eps~_max(i,j)",
                                                     block_norm(result.cod, j, j, result.ys[i - 1], zn),
                                                     schedule.eps_tilde(std::max(i, j)), {long(i), long(j)}));
  const auto bounds = coefficient_bounds(result.ys, zn);
  for (std::size_t i = 1; i <= count; ++i)
    result.report.clauses.push_back(
        Clause::less_eq("(1.5) max |a_i| over the unit sphere <= 2", (*bounds)[i - 1], Scalar(2), {long(i)}));
  return result;
}

namespace {

void require(bool ok, const std::string& what) {
  if (!ok) throw Error(ErrorCode::SceneIncomplete, what);
}

void require_core(const Scene& s) {
  require(s.model != nullptr, "scene has no model");
  require(s.dom.block_count() > 0 && s.dom.block_count() == s.cod.block_count(),
          "scene needs (E_i) and (F_i) with equal block counts");
  require(s.dom.last_index() == s.model->matrix().cols() && s.cod.last_index() == s.model->matrix().rows(),
          "blockings do not cover the model dimensions");
}

/// y = sum a_i ys_i normalized in the Y norm, with the scaled coefficients.
std::optional<std::pair<FinVec, std::vector<Scalar>>> normalized(const Scene& s, std::vector<Scalar> a) {
  FinVec y;
  for (std::size_t i = 0; i < a.size() && i < s.ys.size(); ++i) y += a[i] * s.ys[i];
  if (y.is_zero()) return std::nullopt;
  const Scalar nu = norm(y, y_norm_of(s.model));
  for (auto& v : a) v /= nu;
  y *= Scalar(1) / nu;
  return std::make_pair(std::move(y), std::move(a));
}

InequalityReport lemma_1_2(const Scene& s) {
  InequalityReport rep;
  const NormSpec& zn = s.model->cod_norm();
  const std::size_t L = s.cod.block_count();
  require(!s.coefficients.empty(), "Lemma 1.2 needs coefficient vectors");
  std::vector<std::pair<std::size_t, std::size_t>> windows;
  if (s.window)
    windows.push_back(*s.window);
  else
    for (std::size_t n = 0; n <= L; ++n)
      for (std::size_t m = n + 2; m <= L + 1; ++m) windows.emplace_back(n, m);
  for (std::size_t c = 0; c < s.coefficients.size(); ++c)
    for (const auto& [n, m] : windows) {
      std::vector<Scalar> a = s.coefficients[c];
      for (std::size_t i = n + 1; i < m && i <= a.size(); ++i) a[i - 1] = 0;
      const auto ny = normalized(s, a);
      if (!ny) continue;
      const FinVec& y = ny->first;
      for (std::size_t j = n + 1; j < m && j <= L; ++j)
        rep.clauses.push_back(Clause::less("||Q_j y|| < eps_j", block_norm(s.cod, j, j, y, zn), s.schedule.eps(long(j)),
                                           {long(c), long(n), long(m), long(j)}));
      rep.clauses.push_back(Clause::less("||Q_(n,m) y|| < eps_n", block_norm(s.cod, n + 1, m - 1, y, zn),
                                         s.schedule.eps(long(n)), {long(c), long(n), long(m)}));
    }
  return rep;
}

InequalityReport lemma_1_3(const Scene& s) {
  InequalityReport rep;
  const NormSpec& zn = s.model->cod_norm();
  require(!s.p.empty() && s.r.size() == s.p.size(), "Lemma 1.3 needs p_1..p_s and r_1..r_s");
  require(!s.coefficients.empty(), "Lemma 1.3 needs coefficient vectors");
  bool interleaved = s.p[0] > 1;
  for (std::size_t i = 0; i < s.p.size(); ++i) {
    if (!(s.p[i] < s.r[i])) interleaved = false;
    if (i > 0 && !(s.r[i - 1] < s.p[i])) interleaved = false;
  }
  rep.hypotheses.push_back(Clause::less_eq("0 = p_0 < r_0 = 1 < p_1 < r_1 < p_2 < ...", interleaved ? 0 : 1, 0));
  require(s.p.back() <= s.ys.size() && s.r.back() <= s.cod.block_count(), "p or r beyond the truncation");
  for (std::size_t c = 0; c < s.coefficients.size(); ++c) {
    std::vector<Scalar> a(s.ys.size());
    for (auto pi : s.p) a[pi - 1] = pi <= s.coefficients[c].size() ? s.coefficients[c][pi - 1] : Scalar(0);
    const auto ny = normalized(s, a);
    if (!ny) continue;
    const auto& [y, an] = *ny;
    for (std::size_t i = 1; i <= s.p.size(); ++i) {
      const std::size_t r_prev = i == 1 ? 1 : s.r[i - 2];
      const long p_prev = i == 1 ? 0 : long(s.p[i - 2]);
      const FinVec diff = project_blocks(s.cod, r_prev, s.r[i - 1], y) - an[s.p[i - 1] - 1] * s.ys[s.p[i - 1] - 1];
      rep.clauses.push_back(Clause::less("||Q_[r_{i-1}, r_i] y - a_i y'_{p_i}|| < eps_{p_{i-1}-1}", norm(diff, zn),
                                         s.schedule.eps(p_prev - 1), {long(c), long(i)}));
    }
  }
  return rep;
}

InequalityReport lemma_1_4(const Scene& s) {
  InequalityReport rep;
  const QuotientModel& m = *s.model;
  const std::size_t L = s.dom.block_count();
  for (std::size_t i = 1; i <= L; ++i) {
    const auto cols = single_block(L, i);
    for (std::size_t j = 1; j <= L; ++j) {
      if (j == i || j + 1 == i) continue;
      rep.clauses.push_back(Clause::less("C ||Q_j T P_i|| < eps_max(i,j)",
                                         scaled_norm(m, block_operator(m.matrix(), s.cod, j, j, s.dom, cols), s.norms),
                                         s.schedule.eps(long(std::max(i, j))), {long(i), long(j)}));
    }
    if (i >= 3)
      rep.clauses.push_back(Clause::less("C ||Q_[1,i-2] T P_i|| < eps_{i-1}",
                                         scaled_norm(m, block_operator(m.matrix(), s.cod, 1, i - 2, s.dom, cols), s.norms),
                                         s.schedule.eps(long(i) - 1), {long(i)}));
    rep.clauses.push_back(Clause::less("C ||Q_[i+1,inf) T P_i|| < eps_{i-1}",
                                       scaled_norm(m, block_operator(m.matrix(), s.cod, i + 1, L, s.dom, cols), s.norms),
                                       s.schedule.eps(long(i) - 1), {long(i)}));
  }
  return rep;
}

InequalityReport lemma_1_5(const Scene& s) {
  InequalityReport rep;
  const QuotientModel& m = *s.model;
  const std::size_t L = s.dom.block_count();
  for (std::size_t j = 1; j <= L; ++j) {
    std::vector<bool> cols(L, true);
    cols[j - 1] = false;
    if (j < L) cols[j] = false;
    rep.clauses.push_back(Clause::less("C ||Q_j T P_{k != j, j+1}|| < eps_{j-1}",
                                       scaled_norm(m, block_operator(m.matrix(), s.cod, j, j, s.dom, cols), s.norms),
                                       s.schedule.eps(long(j) - 1), {long(j)}));
  }
  return rep;
}

struct ABView {
  std::vector<FinVec> omega;  // omega[j], 1-based
  std::vector<FinVec> a;      // a[j] = Q_j T omega_{j+1}
  std::vector<FinVec> b;      // b[j] = Q_j T omega_j
  std::vector<FinVec> t_omega;
};

ABView ab_view(const Scene& s) {
  const std::size_t L = s.dom.block_count();
  const Matrix& t = s.model->matrix();
  ABView v;
  v.omega.resize(L + 2);
  v.a.resize(L + 2);
  v.b.resize(L + 2);
  v.t_omega.resize(L + 2);
  for (std::size_t j = 1; j <= L; ++j) {
    v.omega[j] = project_blocks(s.dom, j, j, *s.x);
    v.t_omega[j] = t.apply(v.omega[j]);
    v.b[j] = project_blocks(s.cod, j, j, v.t_omega[j]);
    v.a[j - 1] = project_blocks(s.cod, j - 1, j - 1, v.t_omega[j]);
  }
  return v;
}

void lemma_1_6_hypotheses(const Scene& s, InequalityReport& rep) {
  require(s.x.has_value() && s.window.has_value(), "Lemma 1.6 needs x and a window (n, m)");
  const auto [n, m] = *s.window;
  require(n >= 1 && n < m && m <= s.dom.block_count() + 1, "Lemma 1.6 window must satisfy 1 <= n < m <= L + 1");
  const QuotientModel& model = *s.model;
  rep.hypotheses.push_back(Clause::less_eq("||x|| <= C", norm(*s.x, model.dom_norm()), model.covering()));
  const FinVec tx = model.matrix().apply(*s.x);
  for (std::size_t j = n + 1; j < m; ++j)
    rep.hypotheses.push_back(Clause::less("||Q_j T x|| < 2 eps_{j-1}", block_norm(s.cod, j, j, tx, model.cod_norm()),
                                          2 * s.schedule.eps(long(j) - 1), {long(j)}));
}

InequalityReport lemma_1_6a(const Scene& s) {
  InequalityReport rep;
  lemma_1_6_hypotheses(s, rep);
  const auto [n, m] = *s.window;
  const ABView v = ab_view(s);
  for (std::size_t j = n + 1; j < m; ++j)
    rep.clauses.push_back(Clause::less("||a_j + b_j|| < 3 eps_{j-1}", norm(v.a[j] + v.b[j], s.model->cod_norm()),
                                       3 * s.schedule.eps(long(j) - 1), {long(j)}));
  return rep;
}

InequalityReport lemma_1_6b(const Scene& s) {
  InequalityReport rep;
  lemma_1_6_hypotheses(s, rep);
  const auto [n, m] = *s.window;
  const ABView v = ab_view(s);
  for (std::size_t r = n + 1; r < m; ++r) {
    FinVec sum;
    for (std::size_t q = r + 1; q < m; ++q) {
      sum += v.t_omega[q];
      rep.clauses.push_back(Clause::less("||sum_{j in (r,s]} T omega_j - (a_r + b_s)|| < 5 eps_{r-1}",
                                         norm(sum - (v.a[r] + v.b[q]), s.model->cod_norm()),
                                         5 * s.schedule.eps(long(r) - 1), {long(r), long(q)}));
    }
  }
  return rep;
}

}  // namespace

InequalityReport check_hypotheses(const Scene& s) {
  require_core(s);
  InequalityReport rep;
  rep.lemma = "hypotheses";
  const QuotientModel& m = *s.model;
  const auto sched = validate_schedule(s.schedule);
  rep.hypotheses.push_back(
      Clause::less_eq("schedule satisfies (1.1) and (1.2)", sched.pass ? 0 : 1, 0));

  const Blocking& dt = s.dom_tilde.block_count() ? s.dom_tilde : s.dom;
  const Blocking& ct = s.cod_tilde.block_count() ? s.cod_tilde : s.cod;
  const std::size_t Lt = dt.block_count();
  require(ct.block_count() == Lt, "tilde blockings differ in block count");
  for (std::size_t i = 1; i <= Lt; ++i)
    for (std::size_t j = 1; j <= Lt; ++j) {
      if (j == i || j + 1 == i) continue;
      rep.hypotheses.push_back(Clause::less("(1.3) C ||Q~_j T P~_i|| < eps~_max(i,j)",
                                            scaled_norm(m, block_operator(m.matrix(), ct, j, j, dt, single_block(Lt, i)), s.norms),
                                            s.schedule.eps_tilde(std::max(i, j)), {long(i), long(j)}));
    }

  const std::size_t L = s.cod.block_count();
  for (std::size_t i = 1; i <= s.ys.size(); ++i)
    for (std::size_t j = 1; j <= L; ++j)
      if (i != j)
        rep.hypotheses.push_back(Clause::less("(1.4) ||Q_j y'_i|| < eps~_max(i,j)",
                                              block_norm(s.cod, j, j, s.ys[i - 1], m.cod_norm()),
                                              s.schedule.eps_tilde(std::max(i, j)), {long(i), long(j)}));
  if (!s.ys.empty()) {
    const auto bounds = coefficient_bounds(s.ys, m.y_norm() ? *m.y_norm() : m.cod_norm());
    if (!bounds)
      rep.hypotheses.push_back(Clause::less_eq("(1.5) ys linearly independent", 1, 0));
    else
      for (std::size_t i = 1; i <= bounds->size(); ++i)
        rep.hypotheses.push_back(
            Clause::less_eq("(1.5) max |a_i| over the unit sphere <= 2", (*bounds)[i - 1], Scalar(2), {long(i)}));
  }
  return rep;
}

InequalityReport check_lemma(const std::string& id, const Scene& scene) {
  return check_lemma(id, scene, check_hypotheses(scene));
}

InequalityReport check_lemma(const std::string& id, const Scene& scene, const InequalityReport& hypotheses) {
  require_core(scene);
  InequalityReport rep;
  if (id == "1.2")
    rep = lemma_1_2(scene);
  else if (id == "1.3")
    rep = lemma_1_3(scene);
  else if (id == "1.4")
    rep = lemma_1_4(scene);
  else if (id == "1.5")
    rep = lemma_1_5(scene);
  else if (id == "1.6a")
    rep = lemma_1_6a(scene);
  else if (id == "1.6b")
    rep = lemma_1_6b(scene);
  else
    throw Error(ErrorCode::InvalidArgument, "unknown lemma id '" + id + "'");
  rep.lemma = id;
  rep.hypotheses.insert(rep.hypotheses.begin(), hypotheses.hypotheses.begin(), hypotheses.hypotheses.end());
  return rep;
}

}  // namespace wuq
