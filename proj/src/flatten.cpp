#include "wuq/flatten.hpp"

#include <algorithm>

#include "wuq/error.hpp"

namespace wuq {

ABParts ab_parts(const BlockVector& x, const QuotientModel& model, const Blocking& cod) {
  const std::size_t L = x.blocking.block_count();
  if (cod.block_count() != L) throw Error(ErrorCode::LengthMismatch, "domain and codomain blockings differ in length");
  ABParts parts;
  parts.a.resize(L + 1);
  parts.b.resize(L + 1);
  parts.t_omega.resize(L + 1);
  for (std::size_t j = 1; j <= L; ++j) {
    parts.t_omega[j] = model.matrix().apply(x.part(j));
    parts.b[j] = project_blocks(cod, j, j, parts.t_omega[j]);
    if (j > 1) parts.a[j - 1] = project_blocks(cod, j - 1, j - 1, parts.t_omega[j]);
  }
  return parts;
}

AverageSearch find_small_average(const std::vector<FinVec>& as, const Scalar& eps, const NormSpec& norm_spec,
                                 std::size_t lo, std::size_t hi, std::size_t subset_max) {
  const std::size_t first = lo + 1;
  if (hi <= first || first >= as.size()) throw Error(ErrorCode::EmptyWindow, "no index strictly inside the window");
  const std::size_t last = std::min(hi, as.size()) - 1;
  AverageSearch s;
  bool have_min = false;
  auto consider = [&](const std::vector<std::size_t>& set) {
    FinVec sum;
    for (auto i : set) sum += as[i];
    const Scalar avg = norm(sum, norm_spec) / Scalar(static_cast<long>(set.size()));
    ++s.searched;
    if (avg < eps) {
      s.found = true;
      s.indices = set;
      s.average = avg;
      return true;
    }
    if (!have_min || avg < s.average) {
      have_min = true;
      s.average = avg;
      s.indices = set;
    }
    return false;
  };

  const std::size_t len = last - first + 1;
  for (std::size_t k = 1; k <= len; ++k)
    for (std::size_t start = first; start + k - 1 <= last; ++start) {
      std::vector<std::size_t> set(k);
      for (std::size_t t = 0; t < k; ++t) set[t] = start + t;
      if (consider(set)) return s;
    }
  for (std::size_t k = 2; k <= std::min(subset_max, len); ++k) {
    std::vector<std::size_t> pick(k);
    for (std::size_t t = 0; t < k; ++t) pick[t] = first + t;
    for (;;) {
      if (pick.back() - pick.front() + 1 != k && consider(pick)) return s;
      std::size_t t = k;
      while (t > 0 && pick[t - 1] == last - (k - t)) --t;
      if (t == 0) break;
      ++pick[t - 1];
      for (std::size_t u = t; u < k; ++u) pick[u] = pick[u - 1] + 1;
    }
  }
  return s;
}

namespace {

bool plan_ok(const RampPlan& p, std::size_t blocks) {
  if (p.i.empty() || p.j.empty() || p.i.front() <= p.n || p.j.back() >= p.m || p.j.back() > blocks) return false;
  std::vector<std::size_t> all(p.i);
  all.insert(all.end(), p.j.begin(), p.j.end());
  return std::adjacent_find(all.begin(), all.end(), std::greater_equal<>()) == all.end();
}

}  // namespace

CombCoefficients ramp_coefficients(const RampPlan& p, std::size_t blocks) {
  if (!plan_ok(p, blocks)) throw Error(ErrorCode::PlanIncompatible, "ramp plan is not n < i_1 < ... < j_K < m");
  const long k = static_cast<long>(p.i.size());
  const long K = static_cast<long>(p.j.size());
  std::vector<Scalar> c(blocks, Scalar(1));
  for (long t = 1; t < k; ++t)
    for (std::size_t b = p.i[t - 1] + 1; b <= p.i[t]; ++b) c[b - 1] = ratio(k - t, k);
  for (std::size_t b = p.i.back() + 1; b <= p.j.front(); ++b) c[b - 1] = 0;
  for (long t = 1; t < K; ++t)
    for (std::size_t b = p.j[t - 1] + 1; b <= p.j[t]; ++b) c[b - 1] = ratio(t, K);
  return CombCoefficients(std::move(c));
}

FinVec build_ramp(const BlockVector& x, const RampPlan& plan) {
  return comb_scale(x, ramp_coefficients(plan, x.blocking.block_count()));
}

InequalityReport flatten_estimates(const FinVec& x, const FinVec& xbar, const QuotientModel& model,
                                   const EpsilonSchedule& schedule, const Blocking& dom, const Blocking& cod,
                                   const RampPlan& plan, std::size_t n0, const Scalar& eps) {
  InequalityReport rep;
  rep.lemma = "1.7";
  const NormSpec& zn = model.cod_norm();
  const Matrix& t = model.matrix();
  const ABParts ab = ab_parts(block_decompose(x, dom), model, cod);
  const auto& a = ab.a;
  const auto& b = ab.b;
  auto e = [&](long i) { return schedule.eps(i); };
  const long k = static_cast<long>(plan.i.size());
  const long K = static_cast<long>(plan.j.size());

  rep.hypotheses.push_back(Clause::less_eq("||x|| <= C", norm(x, model.dom_norm()), model.covering()));
  const FinVec tx = t.apply(x);
  for (std::size_t j = plan.n + 1; j < plan.m; ++j)
    rep.hypotheses.push_back(Clause::less("||Q_j T x|| < 2 eps_{j-1}", norm(project_blocks(cod, j, j, tx), zn),
                                          2 * e(long(j) - 1), {long(j)}));

  rep.clauses.push_back(Clause::less("(1.7) eps_{n0} < eps/12", e(long(n0)), eps / 12, {long(n0)}));

  FinVec sum_i, sum_j;
  for (auto i : plan.i) sum_i += a[i];
  for (auto j : plan.j) sum_j += a[j];
  const Scalar s1 = norm(sum_i, zn) / Scalar(k);
  const Scalar s2 = norm(sum_j, zn) / Scalar(K);
  Scalar s3 = 0, s4 = 0;
  for (long t2 = 2; t2 <= k; ++t2) s3 += ratio(t2 - 1, k) * norm(a[plan.i[t2 - 1]] + b[plan.i[t2 - 1]], zn);
  for (long t2 = 1; t2 <= K; ++t2) s4 += ratio(K - t2 + 1, K) * norm(a[plan.j[t2 - 1]] + b[plan.j[t2 - 1]], zn);

  // Interval decomposition of D = T(x - xbar), each interval replaced by a_r + b_s.
  std::vector<std::size_t> ends(plan.i);
  ends.push_back(plan.j.front());
  FinVec approx;
  auto interval = [&](std::size_t r, std::size_t s, const Scalar& weight) {
    FinVec sum;
    for (std::size_t q = r + 1; q <= s; ++q) sum += ab.t_omega[q];
    rep.clauses.push_back(Clause::less("||sum_{j in (r,s]} T omega_j - (a_r + b_s)|| < 5 eps_{r-1}",
                                       norm(sum - (a[r] + b[s]), zn), 5 * e(long(r) - 1), {long(r), long(s)}));
    approx += weight * (a[r] + b[s]);
  };
  for (long t2 = 1; t2 <= k; ++t2) interval(ends[t2 - 1], ends[t2], ratio(t2, k));
  for (long t2 = 1; t2 < K; ++t2) interval(plan.j[t2 - 1], plan.j[t2], ratio(K - t2, K));

  const FinVec d = t.apply(x - xbar);
  const Scalar s5 = norm(d - approx, zn);
  const Scalar total = s1 + s2 + s3 + s4 + s5;
  const Scalar dn = norm(d, zn);
  const long e0 = long(n0);
  rep.clauses.push_back(Clause::less("(1.8) k^{-1} ||a_{i_1} + ... + a_{i_k}|| < eps/3", s1, eps / 3));
  rep.clauses.push_back(Clause::less("(1.9) K^{-1} ||a_{j_1} + ... + a_{j_K}|| < eps/3", s2, eps / 3));
  rep.clauses.push_back(Clause::less("sum_{t>=2} (t-1)/k ||a_{i_t} + b_{i_t}|| < eps_{n0}", s3, e(e0)));
  rep.clauses.push_back(Clause::less("sum_t (K-t+1)/K ||a_{j_t} + b_{j_t}|| < eps_{n0}", s4, e(e0)));
  rep.clauses.push_back(Clause::less("||T(x - xbar) - sum of interval approximations|| < 2 eps_{n0}", s5, 2 * e(e0)));
  rep.clauses.push_back(Clause::less("sum of the five sub-estimates < eps", total, eps));
  rep.clauses.push_back(Clause::less_eq("||Tx - T xbar|| <= sum of the five sub-estimates", dn, total));
  rep.clauses.push_back(Clause::less("||Tx - T xbar|| < eps", dn, eps));
  const std::size_t r = plan.i.back() + 1;
  rep.clauses.push_back(Clause::less_eq("P_r xbar = 0", norm(project_blocks(dom, r, r, xbar), model.dom_norm()), 0,
                                        {long(r)}));
  return rep;
}

FlattenResult flatten(const FinVec& x, const QuotientModel& model, const EpsilonSchedule& schedule,
                      const Blocking& dom, const Blocking& cod, std::size_t n, std::size_t m, const Scalar& eps,
                      const FlattenOptions& options) {
  if (eps <= 0) throw Error(ErrorCode::InvalidArgument, "flatten needs eps > 0");
  const std::size_t L = dom.block_count();
  m = std::min(m, L + 1);
  FlattenResult result;
  std::size_t n0 = n;
  while (schedule.eps(long(n0)) * 12 >= eps) ++n0;
  result.n0 = n0;
  // i_1 >= n0 + 2, j_1 >= i_k + 2, j_K <= m - 1.
  if (m < n0 + 5) throw Error(ErrorCode::EmptyWindow, "window (n, m) too short for the ramp");

  const BlockVector bx = block_decompose(x, dom);
  const ABParts ab = ab_parts(bx, model, cod);
  const NormSpec& zn = model.cod_norm();
  const Scalar third = eps / 3;

  std::size_t width = 1;
  const std::size_t max_u = m - 2;
  for (std::size_t step = 0; step <= options.widen_cap; ++step) {
    const std::size_t u = std::min(n0 + 2 + width, max_u);
    const AverageSearch is = find_small_average(ab.a, third, zn, n0 + 1, u, options.subset_max);
    if (!is.found) {
      result.failed_search = "i";
      result.certificate = is;
    } else {
      const AverageSearch js = find_small_average(ab.a, third, zn, is.indices.back() + 1, m, options.subset_max);
      if (js.found) {
        result.plan = RampPlan{n, m, is.indices, js.indices};
        result.xbar = build_ramp(bx, result.plan);
        result.r = is.indices.back() + 1;
        result.report = flatten_estimates(x, result.xbar, model, schedule, dom, cod, result.plan, n0, eps);
        result.found = true;
        return result;
      }
      result.failed_search = "j";
      result.certificate = js;
    }
    if (u == max_u) break;
    width *= 2;
  }
  result.failure = "WindowExhausted";
  return result;
}

InequalityReport alternating_bound_check(const FinVec& x, const QuotientModel& model, const EpsilonSchedule& schedule,
                                         const Blocking& dom, const Blocking& cod, std::size_t n, std::size_t m,
                                         const NormConfig& config) {
  InequalityReport rep;
  rep.lemma = "1.8";
  const NormSpec& zn = model.cod_norm();
  const Matrix& t = model.matrix();
  const BlockVector bx = block_decompose(x, dom);
  const ABParts ab = ab_parts(bx, model, cod);
  const Scalar c_t = model.covering() * operator_norm_bounds(t, model.dom_norm(), zn, config).lower;
  m = std::min(m, dom.block_count() + 1);

  rep.hypotheses.push_back(Clause::less_eq("||x|| <= C", norm(x, model.dom_norm()), model.covering()));
  auto chain = [&](const std::vector<std::size_t>& idx) {
    FinVec alt, mixed, z;
    Scalar eps_sum = 0, ab_sum = 0;
    for (std::size_t q = 0; q < idx.size(); ++q) {
      if (q % 2 == 0) {
        alt += ab.a[idx[q]];
        mixed += ab.a[idx[q]];
      } else {
        alt -= ab.a[idx[q]];
        mixed += ab.b[idx[q]];
        ab_sum += norm(ab.a[idx[q]] + ab.b[idx[q]], zn);
        for (std::size_t j = idx[q - 1] + 1; j <= idx[q]; ++j) z += bx.part(j);
      }
      eps_sum += 5 * schedule.eps(long(idx[q]) - 1);
    }
    std::vector<long> w(idx.begin(), idx.end());
    const FinVec tz = t.apply(z);
    rep.clauses.push_back(Clause::less_eq("||z|| <= ||x|| (z a sum of blocks of x)", norm(z, model.dom_norm()),
                                          norm(x, model.dom_norm()), w));
    rep.clauses.push_back(Clause::less("||Tz - (a_{i_1} + b_{i_2} + ...)|| < 5 sum eps_{i_j - 1}", norm(tz - mixed, zn),
                                       eps_sum, w));
    rep.clauses.push_back(Clause::less_eq("||alternating - mixed|| <= sum ||a_{i_2j} + b_{i_2j}||",
                                          norm(alt - mixed, zn), ab_sum, w));
    rep.clauses.push_back(
        Clause::less_eq("||a_{i_1} - a_{i_2} + ... - a_{i_k}|| <= C||T|| + 1", norm(alt, zn), c_t + 1, w));
  };
  for (std::size_t len = 2; len + n + 1 <= m; len += 2)
    for (std::size_t start = n + 1; start + len <= m; ++start) {
      std::vector<std::size_t> idx(len);
      for (std::size_t q = 0; q < len; ++q) idx[q] = start + q;
      chain(idx);
    }
  for (std::size_t i1 = n + 1; i1 < m; ++i1)
    for (std::size_t i2 = i1 + 2; i2 < m; ++i2) chain({i1, i2});
  return rep;
}

}  // namespace wuq
