#include "wuq/pipeline.hpp"

#include <algorithm>
#include <random>

#include "wuq/error.hpp"

namespace wuq {

namespace {

const NormSpec& require_y_norm(const Scene& scene) {
  if (!scene.model) throw Error(ErrorCode::SceneIncomplete, "scene has no model");
  const QuotientModel& m = *scene.model;
  if (!m.y_norm() || !(*m.y_norm() == m.cod_norm()))
    throw Error(ErrorCode::InvalidModel, "the unconditionality argument needs the Y norm to be the codomain norm");
  if (scene.dom.block_count() != scene.cod.block_count() || scene.dom.block_count() == 0)
    throw Error(ErrorCode::SceneIncomplete, "scene blockings are missing or differ in length");
  if (scene.ys.size() < scene.cod.block_count())
    throw Error(ErrorCode::SceneIncomplete, "scene needs one y per codomain block");
  return m.cod_norm();
}

FinVec combine(const Scene& scene, const std::vector<std::size_t>& p, const std::vector<Scalar>& a) {
  FinVec y;
  for (std::size_t i = 0; i < p.size(); ++i) y += a[i] * scene.ys[p[i] - 1];
  return y;
}

std::size_t window_n0(const EpsilonSchedule& schedule, std::size_t n) {
  const Scalar eps = schedule.eps(long(n));
  std::size_t n0 = n;
  while (schedule.eps(long(n0)) * 12 >= eps) ++n0;
  return n0;
}

struct RunOutcome {
  bool ok = false;
  UncondRun run;
  std::size_t failed_window = 0;
  std::optional<FlattenResult> failed;
};

/// The unconditionality argument for one normalized coefficient vector.
RunOutcome run_vector(const Scene& scene, const std::vector<std::size_t>& p, const std::vector<Scalar>& a,
                      const FlattenOptions& fopts) {
  const QuotientModel& model = *scene.model;
  const NormSpec& zn = model.cod_norm();
  const NormSpec& xn = model.dom_norm();
  const EpsilonSchedule& sch = scene.schedule;
  const Blocking& dom = scene.dom;
  const Blocking& cod = scene.cod;
  const std::size_t L = dom.block_count();
  const std::size_t s = p.size();
  auto e = [&](long i) -> Scalar { return sch.eps(i); };
  auto p_at = [&](std::size_t i) -> long { return i == 0 ? 0L : long(p[i - 1]); };

  RunOutcome out;
  UncondRun& run = out.run;
  run.a = a;
  InequalityReport& rep = run.report;
  rep.lemma = "unconditional";

  const FinVec y = combine(scene, p, a);
  run.x = y.is_zero() ? FinVec() : min_norm_preimage(model, y, Scalar(1));
  const FinVec& x = run.x;
  rep.hypotheses.push_back(Clause::less_eq("||x|| <= C", norm(x, xn), model.covering()));

  // g_0 = P_[1,p_1] x, g_i = P_(p_i, p_{i+1}] x, g_s = P_(p_s, L] x.
  std::vector<FinVec> g(s + 1), gbar(s + 1);
  g[0] = project_blocks(dom, 1, p[0], x);
  for (std::size_t i = 1; i <= s; ++i) g[i] = project_blocks(dom, p[i - 1] + 1, i < s ? p[i] : L, x);
  gbar[0] = g[0];
  gbar[s] = g[s];

  for (std::size_t i = 1; i < s; ++i) {
    const std::size_t n = p[i - 1], m = p[i] - 1;
    const FinVec tg = model.matrix().apply(g[i]);
    for (std::size_t j = n + 1; j < m; ++j) {
      rep.clauses.push_back(Clause::less("||Q_j y|| < eps_j", norm(project_blocks(cod, j, j, y), zn), e(long(j)),
                                         {long(i), long(j)}));
      rep.clauses.push_back(Clause::less("||Q_j T g_i|| < 2 eps_{j-1}", norm(project_blocks(cod, j, j, tg), zn),
                                         2 * e(long(j) - 1), {long(i), long(j)}));
    }
    FlattenResult fr = flatten(g[i], model, sch, dom, cod, n, m, e(long(n)), fopts);
    if (!fr.found) {
      out.failed_window = i;
      out.failed = std::move(fr);
      return out;
    }
    rep.append(fr.report);
    gbar[i] = fr.xbar;
    run.r.push_back(fr.r);
    run.plans.push_back(fr.plan);
    rep.clauses.push_back(Clause::less("||T g_i - T gbar_i|| < eps_{p_i}",
                                       norm(model.matrix().apply(g[i] - gbar[i]), zn), e(long(n)), {long(i)}));
  }

  FinVec xbar;
  for (const auto& v : gbar) xbar += v;
  for (std::size_t i = 0; i + 1 < s; ++i)
    rep.clauses.push_back(Clause::less_eq("||P_{r_i} xbar|| = 0", norm(project_blocks(dom, run.r[i], run.r[i], xbar), xn),
                                          Scalar(0), {long(i + 1)}));
  rep.clauses.push_back(Clause::less_eq("||xbar|| <= ||x||", norm(xbar, xn), norm(x, xn)));

  auto r_at = [&](std::size_t i) -> std::size_t { return i == 0 ? 1 : (i < s ? run.r[i - 1] : L); };
  std::vector<FinVec> txbar(s + 1);
  Scalar claim_total = 0;
  for (std::size_t i = 1; i <= s; ++i) {
    const std::size_t lo = r_at(i - 1), hi = r_at(i);
    const FinVec xi = project_blocks(dom, lo, hi, xbar);
    run.xbar.push_back(block_decompose(xi, dom));
    txbar[i] = model.matrix().apply(xi);
    auto qi = [&](const FinVec& v) -> FinVec { return project_blocks(cod, lo, hi, v); };

    FinVec big, bigbar;
    for (std::size_t k = i - 1; k <= i + 1 && k <= s; ++k) {
      big += g[k];
      bigbar += gbar[k];
    }
    const long pp = p_at(i - 1);
    const long rp = long(lo);
    const FinVec ai_yi = a[i - 1] * scene.ys[p[i - 1] - 1];
    const std::vector<long> w{long(i)};

    const Scalar sa = norm(qi(y - model.matrix().apply(big)), zn);
    const Scalar sb = norm(qi(model.matrix().apply(big - bigbar)), zn);
    const Scalar sc = norm(qi(model.matrix().apply(bigbar) - txbar[i]), zn);
    rep.clauses.push_back(Clause::less("||Q_I Tx - Q_I T(g_{i-1} + g_i + g_{i+1})|| < eps_{r_{i-1}-1}", sa, e(rp - 1), w));
    Scalar sum_eps = 0;
    for (std::size_t k = i - 1; k <= i + 1 && k < s; ++k)
      if (k >= 1) sum_eps += e(p_at(k));
    rep.clauses.push_back(Clause::less_eq("||Q_I T(G - Gbar)|| <= ||T(G - Gbar)||", sb,
                                          norm(model.matrix().apply(big - bigbar), zn), w));
    rep.clauses.push_back(Clause::less("||T(G - Gbar)|| < sum of eps_{p_k} over flattened k",
                                       norm(model.matrix().apply(big - bigbar), zn), sum_eps, w));
    rep.clauses.push_back(Clause::less("eps_{p_{i-1}} + eps_{p_i} + eps_{p_{i+1}} < eps_{p_{i-1}-1}",
                                       e(pp) + e(p_at(i)) + (i < s ? e(p_at(i + 1)) : Scalar(0)), e(pp - 1), w));
    rep.clauses.push_back(Clause::less("||Q_I T(G - Gbar)|| < eps_{p_{i-1}-1}", sb, e(pp - 1), w));
    rep.clauses.push_back(Clause::less("||Q_I [T Gbar - T xbar_i]|| < eps_{r_{i-1}-1}", sc, e(rp - 1), w));
    rep.clauses.push_back(Clause::less("sum of the three estimates < 3 eps_{p_{i-1}-1}", sa + sb + sc, 3 * e(pp - 1), w));
    rep.clauses.push_back(Clause::less("Subclaim: ||Q_I Tx - T xbar_i|| < 3 eps_{p_{i-1}-1}",
                                       norm(qi(y) - txbar[i], zn), 3 * e(pp - 1), w));
    rep.clauses.push_back(Clause::less("||Q_I y - a_i y_i|| < eps_{p_{i-1}-1}", norm(qi(y) - ai_yi, zn), e(pp - 1), w));
    const Scalar claim = norm(txbar[i] - ai_yi, zn);
    rep.clauses.push_back(Clause::less("Claim: ||T xbar_i - a_i y_i|| < 4 eps_{p_{i-1}-1}", claim, 4 * e(pp - 1), w));
    claim_total += 4 * e(pp - 1);
  }
  rep.clauses.push_back(Clause::less("sum 4 eps_{p_{i-1}-1} < 1", claim_total, Scalar(1)));

  std::vector<FinVec> yi(s);
  for (std::size_t i = 0; i < s; ++i) yi[i] = scene.ys[p[i] - 1];
  if (std::all_of(a.begin(), a.end(), [](const Scalar& v) { return v == 0; })) {
    run.measured = 0;
    run.best_signs.assign(s, 1);
  } else {
    const UncondResult u = uncond_constant(yi, a, zn, UncondMode::Fixed, {}, scene.norms);
    run.measured = u.value;
    run.best_signs = u.best_signs;
  }
  // The chain of the final display, replayed for the maximizing signs.
  FinVec signed_y, signed_tx, signed_x;
  Scalar claim_sum = 0;
  for (std::size_t i = 0; i < s; ++i) {
    const Scalar d = run.best_signs.empty() ? Scalar(1) : Scalar(run.best_signs[i]);
    signed_y += (d * a[i]) * yi[i];
    signed_tx += d * txbar[i + 1];
    signed_x += d * run.xbar[i].sum();
    claim_sum += norm(a[i] * yi[i] - txbar[i + 1], zn);
  }
  rep.clauses.push_back(Clause::less_eq("||sum d_i a_i y_i|| <= sum ||a_i y_i - T xbar_i|| + ||sum d_i T xbar_i||",
                                        norm(signed_y, zn), claim_sum + norm(signed_tx, zn)));
  rep.clauses.push_back(Clause::less_eq("||sum d_i xbar_i|| <= C", norm(signed_x, xn), model.covering()));
  out.ok = true;
  return out;
}

std::vector<Scalar> scaled(std::vector<Scalar> a, const Scalar& f) {
  for (auto& v : a) v *= f;
  return a;
}

}  // namespace

bool UncondCertificate::pass() const {
  for (const auto& run : runs)
    if (!run.report.hypotheses_hold() || !run.report.clauses_hold() || run.measured > bound) return false;
  return true;
}

std::vector<std::size_t> plan_indices(const EpsilonSchedule& schedule, std::size_t blocks, std::size_t max_selected,
                                      const std::vector<std::size_t>& extra) {
  std::vector<std::size_t> p;
  std::size_t next = 2;
  while (next < blocks && p.size() < max_selected) {
    p.push_back(next);
    // m = p_{i+1} - 1 must reach n0 + 5 for the ramp to fit.
    const std::size_t widen = p.size() <= extra.size() ? extra[p.size() - 1] : 0;
    next = window_n0(schedule, next) + 6 + widen;
  }
  return p;
}

std::vector<std::vector<Scalar>> default_coefficients(std::size_t s) {
  std::vector<std::vector<Scalar>> out;
  for (std::size_t i = 0; i < s; ++i) {
    std::vector<Scalar> a(s, Scalar(0));
    a[i] = 1;
    out.push_back(std::move(a));
  }
  std::vector<Scalar> ones(s, Scalar(1)), alt(s), harmonic(s);
  for (std::size_t i = 0; i < s; ++i) {
    alt[i] = i % 2 == 0 ? 1 : -1;
    harmonic[i] = ratio(1, long(i) + 1);
  }
  out.push_back(ones);
  out.push_back(alt);
  out.push_back(harmonic);
  return out;
}

ExtractResult extract_unconditional(const Scene& scene, std::vector<std::vector<Scalar>> coefficient_sets,
                                    const ExtractOptions& options) {
  const NormSpec& yn = require_y_norm(scene);
  const QuotientModel& model = *scene.model;
  const std::size_t L = scene.dom.block_count();
  std::vector<std::size_t> extra;
  std::vector<std::size_t> p = plan_indices(scene.schedule, L, options.max_selected);
  if (p.size() < 3)
    throw Error(ErrorCode::TooFewIndices, "only " + std::to_string(p.size()) + " indices fit in " + std::to_string(L) + " blocks");
  const bool supplied = !coefficient_sets.empty();

  ExtractResult result;
  std::size_t widenings = 0;
  for (;;) {
    const std::size_t s = p.size();
    std::vector<std::vector<Scalar>> sets = supplied ? coefficient_sets : default_coefficients(s);
    UncondCertificate cert;
    cert.p = p;
    cert.covering = model.covering();
    cert.t_norm_lower = operator_norm_bounds(model.matrix(), model.dom_norm(), model.cod_norm(), scene.norms).lower;
    cert.bound = 1 + cert.covering * cert.t_norm_lower;
    bool retry = false;
    for (auto a : sets) {
      if (a.size() != s)
        throw Error(ErrorCode::LengthMismatch, "coefficient vector has " + std::to_string(a.size()) + " entries, expected " +
                                                   std::to_string(s));
      const FinVec y = combine(scene, p, a);
      Scalar scale = 1;
      if (!y.is_zero()) scale = Scalar(1) / norm(y, yn);
      a = scaled(std::move(a), scale);
      RunOutcome out = run_vector(scene, p, a, options.flatten);
      if (!out.ok) {
        const std::size_t w = out.failed_window;
        if (widenings < options.widen_cap) {
          if (extra.size() < w) extra.resize(w, 0);
          ++extra[w - 1];
          const auto widened = plan_indices(scene.schedule, L, options.max_selected, extra);
          if (widened.size() >= 3) {
            ++widenings;
            p = widened;
            retry = true;
            break;
          }
        }
        result.failure = "FlattenFailed";
        result.failed_window = w;
        result.failed_flatten = std::move(out.failed);
        result.certificate = std::move(cert);
        return result;
      }
      out.run.scale = scale;
      cert.runs.push_back(std::move(out.run));
    }
    if (retry) continue;
    result.found = true;
    result.certificate = std::move(cert);
    return result;
  }
}

InequalityReport replay_run(const Scene& scene, const UncondCertificate& cert, const UncondRun& run) {
  require_y_norm(scene);
  RunOutcome out = run_vector(scene, cert.p, run.a, {});
  InequalityReport rep;
  rep.lemma = "unconditional replay";
  if (!out.ok) {
    rep.clauses.push_back(Clause::less_eq("flatten succeeds on replay", Scalar(1), Scalar(0), {long(out.failed_window)}));
    return rep;
  }
  rep = out.run.report;
  auto same = [](bool ok) -> Scalar { return ok ? Scalar(0) : Scalar(1); };
  rep.clauses.push_back(Clause::less_eq("replayed x matches", same(out.run.x == run.x), Scalar(0)));
  rep.clauses.push_back(Clause::less_eq("replayed r matches", same(out.run.r == run.r), Scalar(0)));
  rep.clauses.push_back(Clause::less_eq("replayed plans match", same(out.run.plans == run.plans), Scalar(0)));
  bool xbar_same = out.run.xbar.size() == run.xbar.size();
  for (std::size_t i = 0; xbar_same && i < run.xbar.size(); ++i) xbar_same = out.run.xbar[i].sum() == run.xbar[i].sum();
  rep.clauses.push_back(Clause::less_eq("replayed xbar_i match", same(xbar_same), Scalar(0)));
  rep.clauses.push_back(Clause::less_eq("replayed measured maximum matches", same(out.run.measured == run.measured), Scalar(0)));
  rep.clauses.push_back(Clause::less_eq("measured maximum <= 1 + C ||T||", run.measured, cert.bound));
  return rep;
}

Prop19Result prop19_decompose(const Scene& scene, const std::vector<std::size_t>& p_in, const std::vector<Scalar>& a,
                              const std::vector<Scalar>& targets, const ExtractOptions& options) {
  const NormSpec& yn = require_y_norm(scene);
  const QuotientModel& model = *scene.model;
  const std::size_t L = scene.dom.block_count();
  const std::vector<std::size_t> p = p_in.empty() ? plan_indices(scene.schedule, L, options.max_selected) : p_in;
  if (p.size() < 3) throw Error(ErrorCode::TooFewIndices, "fewer than three indices");
  if (a.size() != p.size()) throw Error(ErrorCode::LengthMismatch, "one coefficient per selected index is required");
  if (!targets.empty() && targets.size() != p.size())
    throw Error(ErrorCode::LengthMismatch, "one target per selected index is required");
  const std::size_t s = p.size();

  Prop19Result res;
  res.p = p;
  res.report.lemma = "decomposition";
  const FinVec y = combine(scene, p, a);
  if (y.is_zero()) {
    res.found = true;
    res.r.push_back(0);
    for (std::size_t i = 0; i < s; ++i) res.r.push_back(i + 1 < s ? p[i] + 1 : L);
    res.xs.assign(s, FinVec());
    return res;
  }
  const Scalar nu = norm(y, yn);
  if (nu > 2) throw Error(ErrorCode::PreconditionViolated, "||sum a_i y_i|| = " + nu.get_str() + " exceeds 2");
  RunOutcome out = run_vector(scene, p, scaled(a, Scalar(1) / nu), options.flatten);
  if (!out.ok) {
    res.failure = "FlattenFailed";
    return res;
  }
  res.r.push_back(0);
  for (auto r : out.run.r) res.r.push_back(r);
  // The last piece runs to the end of the truncation.
  res.r.push_back(L + 1);
  for (std::size_t i = 0; i < s; ++i) {
    FinVec xi = nu * out.run.xbar[i].sum();
    res.x += xi;
    res.xs.push_back(std::move(xi));
  }
  const NormSpec& zn = model.cod_norm();
  for (std::size_t i = 1; i <= s; ++i) {
    const Scalar target = targets.empty() ? scene.schedule.eps(long(i)) : targets[i - 1];
    const FinVec diff = model.matrix().apply(res.xs[i - 1]) - a[i - 1] * scene.ys[p[i - 1] - 1];
    res.report.clauses.push_back(Clause::less("||T x_i - a_i y_i|| < target_i", norm(diff, zn), target, {long(i)}));
    const FinVec& xi = res.xs[i - 1];
    const bool inside = xi.is_zero() || (scene.dom.block_of(xi.min_index()) > res.r[i - 1] &&
                                         scene.dom.block_of(xi.max_index()) < res.r[i]);
    res.report.clauses.push_back(
        Clause::less_eq("x_i in [E_j] for j in (r_{i-1}, r_i)", inside ? Scalar(0) : Scalar(1), Scalar(0), {long(i)}));
    res.report.clauses.push_back(Clause::less_eq("r_{i-1} < p_i < r_i",
                                                 res.r[i - 1] < p[i - 1] && p[i - 1] < res.r[i] ? 0 : 1, 0, {long(i)}));
  }
  res.report.clauses.push_back(Clause::less_eq("||x|| <= 2C", norm(res.x, model.dom_norm()), 2 * model.covering()));
  res.found = res.report.clauses_hold();
  if (!res.found) res.failure = "TargetMissed";
  return res;
}

C0FixReport c0_fix_probe(const Scene& scene, const std::vector<std::size_t>& p_in, const std::vector<std::size_t>& depths_in,
                         const ProbeOptions& options) {
  const NormSpec& yn = require_y_norm(scene);
  const QuotientModel& model = *scene.model;
  const std::size_t L = scene.dom.block_count();
  const std::vector<std::size_t> p = p_in.empty() ? plan_indices(scene.schedule, L, 12) : p_in;
  const std::size_t s = p.size();
  C0FixReport rep;
  rep.p = p;
  rep.report.lemma = "c0 fixing";

  auto check = [&](const std::vector<Scalar>& a) -> bool {
    const Scalar v = norm(combine(scene, p, a), yn);
    if (v * 2 < 1 || v > 2) {
      rep.violation = a;
      return false;
    }
    return true;
  };
  std::size_t total = 1;
  for (std::size_t i = 0; i < s && total <= options.exhaustive_cap; ++i) total *= 3;
  if (total <= options.exhaustive_cap) {
    std::vector<Scalar> a(s);
    for (std::size_t code = 1; code < total; ++code) {
      std::size_t c = code;
      for (std::size_t i = 0; i < s; ++i, c /= 3) a[i] = long(c % 3) - 1;
      if (std::all_of(a.begin(), a.end(), [](const Scalar& v) { return v == 0; })) continue;
      if (!check(a)) {
        rep.failure = "NotC0Like";
        return rep;
      }
    }
  } else {
    std::mt19937_64 rng(options.seed);
    std::uniform_int_distribution<int> pick(-1, 1);
    std::vector<Scalar> a(s);
    for (std::size_t t = 0; t < options.samples; ++t) {
      for (auto& v : a) v = pick(rng);
      if (std::all_of(a.begin(), a.end(), [](const Scalar& v) { return v == 0; })) continue;
      if (!check(a)) {
        rep.failure = "NotC0Like";
        return rep;
      }
    }
  }

  std::vector<std::size_t> depths = depths_in;
  if (depths.empty())
    for (std::size_t n = 1; n <= s; ++n) depths.push_back(n);
  std::sort(depths.begin(), depths.end());
  depths.erase(std::unique(depths.begin(), depths.end()), depths.end());
  if (depths.front() == 0 || depths.back() > s)
    throw Error(ErrorCode::InvalidArgument, "depths must lie in 1.." + std::to_string(s));
  rep.depths = depths;

  for (auto n : depths) {
    std::vector<Scalar> a(s, Scalar(0));
    for (std::size_t i = 0; i < n; ++i) a[i] = 1;
    Prop19Result d = prop19_decompose(scene, p, a);
    if (!d.found) {
      rep.failure = d.failure;
      return rep;
    }
    rep.report.append(d.report);
    rep.r.emplace_back(d.r.begin(), d.r.begin() + long(n) + 1);
    rep.xs.emplace_back(d.xs.begin(), d.xs.begin() + long(n));
    FinVec sum;
    for (const auto& v : rep.xs.back()) sum += v;
    const Scalar v = norm(sum, model.dom_norm());
    if (v > rep.uniform_bound) rep.uniform_bound = v;
  }

  auto agrees_from = [&](std::size_t first) -> bool {
    for (std::size_t u = first; u < depths.size(); ++u)
      for (std::size_t w = u + 1; w < depths.size(); ++w)
        for (std::size_t i = 1; i <= depths[u]; ++i)
          if (rep.xs[u][i - 1] != rep.xs[w][i - 1] || rep.r[u][i] != rep.r[w][i]) return false;
    return true;
  };
  rep.stable = agrees_from(0);
  for (std::size_t u = 0; u < depths.size(); ++u)
    if (agrees_from(u)) {
      rep.stable_from = depths[u];
      break;
    }

  const auto& deepest = rep.xs.back();
  for (std::size_t i = 1; i <= deepest.size(); ++i) {
    const FinVec& yi = scene.ys[p[i - 1] - 1];
    const FinVec residual = yi - model.matrix().apply(deepest[i - 1]);
    FinVec omega = residual.is_zero() ? FinVec() : min_norm_preimage(model, residual, Scalar(1));
    FinVec fixed = deepest[i - 1] + omega;
    const bool exact = model.matrix().apply(fixed) == yi;
    rep.report.clauses.push_back(
        Clause::less_eq("T(x_i + omega_i) = y_i", exact ? Scalar(0) : Scalar(1), Scalar(0), {long(i)}));
    rep.report.clauses.push_back(Clause::less_eq("||omega_i|| <= eps_i C", norm(omega, model.dom_norm()),
                                                 scene.schedule.eps(long(i)) * model.covering(), {long(i)}));
    rep.omegas.push_back(std::move(omega));
    rep.corrected.push_back(std::move(fixed));
  }
  rep.found = rep.report.clauses_hold();
  if (!rep.found) rep.failure = "ClauseFailed";
  return rep;
}

}  // namespace wuq
