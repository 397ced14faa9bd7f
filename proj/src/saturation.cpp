#include "wuq/saturation.hpp"

#include <algorithm>

#include "wuq/error.hpp"

namespace wuq {

namespace {

NormSpec y_norm_of(const QuotientModel& model) {
  if (model.y_norm()) return *model.y_norm();
  // Non-owning handle: the caller keeps the model alive for the call.
  return NormSpec::quotient(std::shared_ptr<const QuotientModel>(std::shared_ptr<const QuotientModel>(), &model));
}

Scalar sup_norm(const FinVec& x) { return norm(x, NormSpec::sup()); }

bool lattice_norm(const NormSpec& n) { return n.kind() != NormSpec::Kind::Quotient; }

bool successive(const std::vector<FinVec>& vs) {
  Index last = 0;
  for (const auto& v : vs) {
    if (v.is_zero()) continue;
    if (v.min_index() <= last) return false;
    last = v.max_index();
  }
  return true;
}

bool disjoint(const std::vector<FinVec>& vs) {
  std::vector<Index> all;
  for (const auto& v : vs)
    for (const auto& [i, _] : v.entries()) all.push_back(i);
  std::sort(all.begin(), all.end());
  return std::adjacent_find(all.begin(), all.end()) == all.end();
}

Scalar flag(bool ok) { return ok ? Scalar(0) : Scalar(1); }

Scalar abs_diff(const Scalar& a, const Scalar& b) {
  Scalar d = a - b;
  return abs(d);
}

Scalar c0_constant_of(const std::vector<FinVec>& bs, const NormSpec& n) {
  if (lattice_norm(n) && disjoint(bs)) return c0_equiv_constant_disjoint(bs, n);
  return c0_equiv_constant(bs, n);
}

}  // namespace

FinVec build_average(const std::vector<FinVec>& xs, const AverageTree& tree, const NormSpec& n) {
  if (tree.lambda <= 0) throw Error(ErrorCode::InvalidArgument, "average scaling must be positive");
  FinVec out;
  if (tree.level <= 1) {
    if (tree.f.empty()) throw Error(ErrorCode::EmptyF, "level-1 average over an empty index set");
    for (auto k : tree.f) {
      if (k == 0 || k > xs.size()) throw Error(ErrorCode::IndexOutOfRange, "average index " + std::to_string(k));
      out += xs[k - 1];
    }
  } else {
    if (tree.children.empty()) throw Error(ErrorCode::EmptyF, "average without children");
    std::vector<FinVec> parts;
    for (const auto& child : tree.children) {
      if (child.level + 1 != tree.level) throw Error(ErrorCode::InvalidArgument, "child level must be one below its parent");
      FinVec v = build_average(xs, child, n);
      if (v.is_zero()) throw Error(ErrorCode::PreconditionViolated, "a child average is zero and cannot be normalized");
      v *= Scalar(1) / norm(v, n);
      parts.push_back(std::move(v));
    }
    if (!successive(parts)) throw Error(ErrorCode::PreconditionViolated, "child averages do not form a block basis");
    for (const auto& v : parts) out += v;
  }
  out *= tree.lambda;
  return out;
}

Scalar c0_equiv_constant(const std::vector<FinVec>& bs, const NormSpec& n, std::size_t cap) {
  if (bs.empty()) throw Error(ErrorCode::InvalidArgument, "no vectors");
  if (bs.size() > cap) throw Error(ErrorCode::SubsetCapExceeded, std::to_string(bs.size()) + " vectors exceed the cap");
  Scalar lo;
  for (std::size_t i = 0; i < bs.size(); ++i) {
    if (bs[i].is_zero()) throw Error(ErrorCode::PreconditionViolated, "zero vector");
    const Scalar v = norm(bs[i], n);
    if (i == 0 || v < lo) lo = v;
  }
  // Gray-code walk over all nonempty subsets.
  FinVec sum;
  Scalar best = 0;
  const std::size_t total = std::size_t(1) << bs.size();
  std::size_t prev = 0;
  for (std::size_t t = 1; t < total; ++t) {
    const std::size_t gray = t ^ (t >> 1);
    const std::size_t changed = gray ^ prev;
    const std::size_t bit = std::size_t(__builtin_ctzll(changed));
    if (gray & changed)
      sum += bs[bit];
    else
      sum -= bs[bit];
    prev = gray;
    const Scalar v = norm(sum, n);
    if (v > best) best = v;
  }
  return best / lo;
}

Scalar c0_equiv_constant_disjoint(const std::vector<FinVec>& bs, const NormSpec& n) {
  if (bs.empty()) throw Error(ErrorCode::InvalidArgument, "no vectors");
  if (!lattice_norm(n) || !disjoint(bs))
    throw Error(ErrorCode::PreconditionViolated, "needs disjoint supports and a 1-unconditional norm");
  FinVec sum;
  Scalar lo;
  for (std::size_t i = 0; i < bs.size(); ++i) {
    if (bs[i].is_zero()) throw Error(ErrorCode::PreconditionViolated, "zero vector");
    const Scalar v = norm(bs[i], n);
    if (i == 0 || v < lo) lo = v;
    sum += bs[i];
  }
  return norm(sum, n) / lo;
}

SaturationReport s1_witness_search(const QuotientModel& model, const std::vector<FinVec>& ys, std::size_t budget,
                                   const WitnessOptions& options) {
  if (model.dom_norm().kind() != NormSpec::Kind::Schreier || model.dom_norm().level() != 1)
    throw Error(ErrorCode::PreconditionViolated, "the domain norm must be the Schreier norm");
  const NormSpec yn = y_norm_of(model);
  std::vector<std::size_t> starts = options.starts;
  if (starts.empty())
    for (std::size_t s = 1; s <= ys.size(); s *= 2) starts.push_back(s);

  SaturationReport best;
  std::size_t used = 0;
  bool exhausted = false;
  for (auto s0 : starts) {
    if (s0 == 0 || s0 > ys.size()) continue;
    std::vector<AverageTree> trees;
    std::vector<FinVec> blocks;
    Scalar constant;
    std::size_t pos = s0;
    Scalar target = 1;
    while (pos <= ys.size() && blocks.size() < options.max_blocks) {
      if (used >= budget) {
        exhausted = true;
        break;
      }
      std::optional<std::pair<std::size_t, Scalar>> decayed, fallback;
      FinVec v;
      for (std::size_t k = 1; pos + k - 1 <= ys.size(); ++k) {
        if (used >= budget) {
          exhausted = true;
          break;
        }
        v += ys[pos + k - 2];
        if (v.is_zero()) continue;
        const Scalar nu = norm(v, yn);
        ++used;
        const FinVec u = (Scalar(1) / nu) * v;
        std::vector<FinVec> trial = blocks;
        trial.push_back(u);
        const Scalar c = c0_constant_of(trial, yn);
        ++used;
        if (c > options.threshold) continue;
        if (!fallback) fallback = std::make_pair(k, c);
        if (sup_norm(u) <= target) {
          decayed = std::make_pair(k, c);
          break;
        }
      }
      const auto pick = decayed ? decayed : fallback;
      if (!pick || (exhausted && !decayed)) break;
      const std::size_t k = pick->first;
      AverageTree t;
      std::vector<Index> f;
      FinVec w;
      for (std::size_t i = pos; i < pos + k; ++i) {
        f.push_back(i);
        w += ys[i - 1];
      }
      t.f = IndexSet(f);
      t.lambda = Scalar(1) / norm(w, yn);
      blocks.push_back(t.lambda * w);
      trees.push_back(std::move(t));
      constant = pick->second;
      pos += k;
      target /= 2;
    }
    const bool better = blocks.size() > best.vectors.size() ||
                        (blocks.size() == best.vectors.size() && !blocks.empty() && constant < best.constant);
    if (better) {
      best.averages = std::move(trees);
      best.vectors = std::move(blocks);
      best.constant = constant;
      best.start = s0;
    }
    if (exhausted) break;
  }
  best.evaluations = used;
  best.budget_exhausted = exhausted;
  best.found = !best.budget_exhausted && best.vectors.size() >= options.min_blocks && best.constant <= options.threshold;
  return best;
}

InequalityReport replay_witness(const QuotientModel& model, const std::vector<FinVec>& ys, const SaturationReport& report,
                                const WitnessOptions& options) {
  const NormSpec yn = y_norm_of(model);
  InequalityReport rep;
  rep.lemma = "saturation witness";
  std::vector<FinVec> vs;
  for (std::size_t i = 0; i < report.averages.size(); ++i) {
    const AverageTree& t = report.averages[i];
    rep.clauses.push_back(Clause::less_eq("1-average", flag(t.level == 1), 0, {long(i + 1)}));
    FinVec v = build_average(ys, t, yn);
    rep.clauses.push_back(Clause::less_eq("||u_j|| = 1", abs_diff(norm(v, yn), 1), 0, {long(i + 1)}));
    rep.clauses.push_back(Clause::less_eq("recorded vector matches",
                                          flag(i < report.vectors.size() && report.vectors[i] == v), 0, {long(i + 1)}));
    if (i > 0)
      rep.clauses.push_back(Clause::less("max F_{j-1} < min F_j", Scalar(long(report.averages[i - 1].f.max())),
                                         Scalar(long(t.f.min())), {long(i + 1)}));
    vs.push_back(std::move(v));
  }
  rep.clauses.push_back(Clause::less_eq("at least the required number of blocks", Scalar(long(options.min_blocks)),
                                        Scalar(long(vs.size()))));
  if (!vs.empty()) {
    const Scalar c = vs.size() <= 20 ? c0_equiv_constant(vs, yn) : c0_constant_of(vs, yn);
    rep.clauses.push_back(Clause::less_eq("recorded constant matches", abs_diff(c, report.constant), 0));
    rep.clauses.push_back(Clause::less_eq("c0 constant <= threshold", c, options.threshold));
  }
  return rep;
}

std::vector<std::string> recorded_names(std::size_t m) {
  std::vector<std::string> names{"lambda", "sum eps", "||x||", "||sum (x_i + omega_i)||", "||sum omega_i||"};
  for (std::size_t k = 1; k <= m; ++k) names.push_back("||sum_{F_" + std::to_string(k) + "} (x_i + omega_i)||_0");
  for (std::size_t k = 1; k <= m; ++k) names.push_back("||x_{i_" + std::to_string(k) + "}||_0");
  names.push_back("||sum_k x_{i_k}||");
  names.push_back("sum_{k > m/2} ||x_{i_k}||_0");
  names.push_back("delta m / 4");
  return names;
}

namespace {

void require_trace(const ContradictionTrace& t) {
  auto need = [](bool ok, const std::string& what) {
    if (!ok) throw Error(ErrorCode::TraceIncomplete, what);
  };
  need(t.model != nullptr, "no model");
  need(t.m > 0, "m is missing");
  need(t.delta > 0, "delta is missing");
  need(t.lambda > 0, "lambda is missing");
  need(t.eps.size() >= 2 * t.m, "fewer than 2m eps values");
  need(t.zs.size() == 2 * t.m, "z list must hold 2m vectors");
  need(t.xs.size() == 2 * t.m, "x list must hold 2m vectors");
  need(t.omegas.size() == 2 * t.m, "omega list must hold 2m vectors");
  need(t.picks.size() == t.m, "exactly m picks i_k are required");
  for (auto i : t.picks) need(i >= 1 && i <= 2 * t.m, "pick outside 1..2m");
  const NormSpec& d = t.model->dom_norm();
  if (d.kind() != NormSpec::Kind::Schreier || d.level() != 1)
    throw Error(ErrorCode::PreconditionViolated, "the domain norm must be the Schreier norm");
}

/// F_k = {1..2m} minus the picks before k.
std::vector<std::vector<std::size_t>> pick_families(const ContradictionTrace& t) {
  std::vector<std::vector<std::size_t>> out;
  for (std::size_t k = 0; k < t.m; ++k) {
    std::vector<std::size_t> f;
    for (std::size_t i = 1; i <= 2 * t.m; ++i)
      if (std::find(t.picks.begin(), t.picks.begin() + long(k), i) == t.picks.begin() + long(k)) f.push_back(i);
    out.push_back(std::move(f));
  }
  return out;
}

FinVec sum_over(const std::vector<FinVec>& vs, const std::vector<std::size_t>& f) {
  FinVec s;
  for (auto i : f) s += vs[i - 1];
  return s;
}

std::vector<std::size_t> all_indices(std::size_t n) {
  std::vector<std::size_t> f(n);
  for (std::size_t i = 0; i < n; ++i) f[i] = i + 1;
  return f;
}

}  // namespace

std::vector<std::pair<std::string, Scalar>> compute_recorded(const ContradictionTrace& t) {
  require_trace(t);
  const NormSpec& xn = t.model->dom_norm();
  const auto names = recorded_names(t.m);
  std::vector<Scalar> values;
  const auto all = all_indices(2 * t.m);
  const NormSpec yn = y_norm_of(*t.model);
  values.push_back(Scalar(1) / norm(sum_over(t.zs, all), yn));
  Scalar se = 0;
  for (const auto& e : t.eps) se += e;
  values.push_back(se);
  values.push_back(norm(sum_over(t.xs, all), xn));
  std::vector<FinVec> xw(2 * t.m);
  for (std::size_t i = 0; i < 2 * t.m; ++i) xw[i] = t.xs[i] + t.omegas[i];
  values.push_back(norm(sum_over(xw, all), xn));
  values.push_back(norm(sum_over(t.omegas, all), xn));
  for (const auto& f : pick_families(t)) values.push_back(sup_norm(sum_over(xw, f)));
  for (auto i : t.picks) values.push_back(sup_norm(t.xs[i - 1]));
  values.push_back(norm(sum_over(t.xs, t.picks), xn));
  std::vector<std::size_t> sorted = t.picks;
  std::sort(sorted.begin(), sorted.end());
  Scalar tail = 0;
  for (std::size_t k = t.m / 2; k < t.m; ++k) tail += sup_norm(t.xs[sorted[k] - 1]);
  values.push_back(tail);
  values.push_back(t.delta * long(t.m) / 4);
  std::vector<std::pair<std::string, Scalar>> out;
  for (std::size_t i = 0; i < names.size(); ++i) out.emplace_back(names[i], values[i]);
  return out;
}

ContradictionCheck theorem_b_contradiction_check(const ContradictionTrace& t, std::size_t subset_cap) {
  require_trace(t);
  const QuotientModel& model = *t.model;
  const NormSpec& xn = model.dom_norm();
  const NormSpec yn = y_norm_of(model);
  const Scalar& c = model.covering();
  const Matrix& tm = model.matrix();
  const std::size_t m = t.m, n2 = 2 * t.m;
  const Scalar mm = long(t.m);

  ContradictionCheck out;
  InequalityReport& rep = out.report;
  rep.lemma = "property S(1) counting argument";
  auto add = [&](Clause cl) { rep.clauses.push_back(std::move(cl)); };

  bool gate = true;
  for (const auto& f : t.families)
    if (f.size() < m || (!f.empty() && (f.min() < 1 || f.max() > n2))) gate = false;

  Scalar sum_eps = 0;
  for (const auto& e : t.eps) sum_eps += e;
  add(Clause::less_eq("m is even", flag(m % 2 == 0), 0));
  add(Clause::less("(2.1) sum eps_i < min(delta/(2C), 1)", sum_eps, std::min<Scalar>(t.delta / (2 * c), Scalar(1))));
  add(Clause::less("(2.2) m > 8C/delta", 8 * c / t.delta, mm));

  const auto all = all_indices(n2);
  add(Clause::less_eq("lambda = ||sum z_i||^{-1}", abs_diff(t.lambda * norm(sum_over(t.zs, all), yn), 1), 0));
  auto two_sided = [&](const std::vector<std::size_t>& f, long tag) {
    const Scalar v = t.lambda * norm(sum_over(t.zs, f), yn);
    add(Clause::less("(2.3) lambda ||sum_F z_i|| < 2", v, Scalar(2), {tag, long(f.size())}));
    add(Clause::less("(2.3) lambda ||sum_F z_i|| > 1/3", ratio(1, 3), v, {tag, long(f.size())}));
  };
  for (std::size_t q = 0; q < t.families.size(); ++q)
    if (t.families[q].size() >= m)
      two_sided(std::vector<std::size_t>(t.families[q].begin(), t.families[q].end()), long(q + 1));
  if (n2 <= subset_cap)
    for (std::size_t mask = 1; mask < (std::size_t(1) << n2); ++mask) {
      if (std::size_t(__builtin_popcountll(mask)) < m) continue;
      std::vector<std::size_t> f;
      for (std::size_t i = 0; i < n2; ++i)
        if (mask & (std::size_t(1) << i)) f.push_back(i + 1);
      two_sided(f, 0);
    }

  add(Clause::less_eq("(x_i) is a block basis", flag(successive(t.xs)), 0));
  const FinVec x = sum_over(t.xs, all);
  const Scalar nx = norm(x, xn);
  add(Clause::less_eq("||x|| <= 2C", nx, 2 * c));
  Scalar sum_omega = 0;
  for (std::size_t i = 1; i <= n2; ++i) {
    const FinVec tx = tm.apply(t.xs[i - 1]);
    const FinVec lz = t.lambda * t.zs[i - 1];
    add(Clause::less("||T x_i - lambda z_i|| < eps_i", norm(tx - lz, yn), t.eps[i - 1], {long(i)}));
    add(Clause::less_eq("T omega_i = lambda z_i - T x_i", flag(tm.apply(t.omegas[i - 1]) == lz - tx), 0, {long(i)}));
    const Scalar nw = norm(t.omegas[i - 1], xn);
    add(Clause::less_eq("||omega_i|| <= C eps_i", nw, c * t.eps[i - 1], {long(i)}));
    sum_omega += nw;
  }
  std::vector<FinVec> xw(n2);
  for (std::size_t i = 0; i < n2; ++i) xw[i] = t.xs[i] + t.omegas[i];
  const Scalar nxw = norm(sum_over(xw, all), xn);
  add(Clause::less_eq("||sum (x_i + omega_i)|| <= ||sum x_i|| + sum ||omega_i||", nxw, nx + sum_omega));
  add(Clause::less("||sum x_i|| + sum ||omega_i|| < 2C + sum eps_i C", nx + sum_omega, 2 * c + sum_eps * c));
  add(Clause::less("2C + sum eps_i C < 3C", 2 * c + sum_eps * c, 3 * c));
  add(Clause::less("||sum (x_i + omega_i)|| < 3C", nxw, 3 * c));
  const FinVec w = sum_over(t.omegas, all);
  add(Clause::less_eq("||sum omega_i||_0 <= ||sum omega_i||", sup_norm(w), norm(w, xn)));
  add(Clause::less("||sum omega_i|| < delta/2", norm(w, xn), t.delta / 2));

  std::vector<std::size_t> seen;
  const auto families = pick_families(t);
  for (std::size_t k = 1; k <= m; ++k) {
    const auto& f = families[k - 1];
    const std::size_t ik = t.picks[k - 1];
    const std::vector<long> wk{long(k)};
    add(Clause::less_eq("i_k differs from earlier picks", flag(std::find(seen.begin(), seen.end(), ik) == seen.end()), 0, wk));
    seen.push_back(ik);
    const FinVec s = sum_over(xw, f);
    const Scalar image = norm(tm.apply(s), yn);
    const Scalar zf = t.lambda * norm(sum_over(t.zs, f), yn);
    add(Clause::less_eq("||T sum_{F_k} (x_i + omega_i)|| = lambda ||sum_{F_k} z_i||", abs_diff(image, zf), 0, wk));
    add(Clause::less("||T sum_{F_k} (x_i + omega_i)|| > 1/3", ratio(1, 3), image, wk));
    rep.hypotheses.push_back(Clause::less("Lemma 2.2: ||sum_{F_k} (x_i + omega_i)||_0 > delta", t.delta, sup_norm(s), wk));
    rep.hypotheses.push_back(Clause::less("||x_{i_k}||_0 > delta/2", t.delta / 2, sup_norm(t.xs[ik - 1]), wk));
  }
  const FinVec xp = sum_over(t.xs, t.picks);
  add(Clause::less_eq("||sum_k x_{i_k}|| <= ||x||", norm(xp, xn), nx));
  std::vector<std::size_t> sorted = t.picks;
  std::sort(sorted.begin(), sorted.end());
  Scalar tail = 0;
  for (std::size_t k = m / 2; k < m; ++k) tail += sup_norm(t.xs[sorted[k] - 1]);
  add(Clause::less_eq("sum_{k > m/2} ||x_{i_k}||_0 <= ||sum_k x_{i_k}||", tail, norm(xp, xn)));
  rep.hypotheses.push_back(Clause::less_eq("sum_{k > m/2} ||x_{i_k}||_0 >= delta m/4", t.delta * mm / 4, tail));
  rep.hypotheses.push_back(Clause::less_eq("2C >= delta m/4", t.delta * mm / 4, 2 * c));

  const auto expected = compute_recorded(t);
  for (const auto& [name, value] : t.recorded) {
    const auto it = std::find_if(expected.begin(), expected.end(), [&](const auto& e) { return e.first == name; });
    if (it == expected.end()) throw Error(ErrorCode::TraceIncomplete, "unknown recorded value '" + name + "'");
    add(Clause::less_eq("recorded " + name, abs_diff(value, it->second), 0));
  }

  for (const auto& h : rep.hypotheses)
    if (!h.pass) out.refuted.push_back(h);
  if (!gate)
    out.verdict = "PreconditionGate";
  else if (!rep.clauses_hold())
    out.verdict = "ClauseFailed";
  else
    out.verdict = "CONTRADICTION";
  return out;
}

ContradictionTrace synthetic_trace(std::size_t m) {
  if (m == 0 || m % 2 != 0) throw Error(ErrorCode::InvalidArgument, "m must be a positive even integer");
  const std::size_t n = 4 * m;
  Matrix t(n, n);
  for (std::size_t i = 1; i <= n; ++i) t.at(i, i) = 16;
  const NormSpec s = NormSpec::schreier(1);
  ContradictionTrace tr;
  tr.model = std::make_shared<QuotientModel>(t, s, s, s, ratio(1, 16));
  tr.m = m;
  tr.delta = ratio(1, long(m));
  tr.lambda = ratio(1, 2 * long(m));
  Scalar e = ratio(1, 8 * long(m));
  for (std::size_t i = 0; i < 2 * m; ++i) {
    e /= 2;
    tr.eps.push_back(e);
    const FinVec z = FinVec::unit(2 * m + i);
    tr.zs.push_back(z);
    tr.xs.push_back((tr.lambda / 16) * z);
    tr.omegas.emplace_back();
  }
  for (std::size_t k = 1; k <= m; ++k) tr.picks.push_back(k);
  tr.recorded = compute_recorded(tr);
  return tr;
}

SpreadingResult spreading_probe(const std::vector<FinVec>& xs, const NormSpec& n, std::size_t k,
                                const std::vector<std::size_t>& starts) {
  if (k < 3) throw Error(ErrorCode::InvalidArgument, "k must be at least 3 to separate the two classes");
  if (starts.empty()) throw Error(ErrorCode::InvalidArgument, "no start depths");
  SpreadingResult res;
  for (auto d : starts) {
    if (d == 0 || d + k - 1 > xs.size())
      throw Error(ErrorCode::InsufficientVectors, "start " + std::to_string(d) + " needs " + std::to_string(d + k - 1) +
                                                      " vectors, have " + std::to_string(xs.size()));
    for (std::size_t gap = 1; gap <= 2; ++gap) {
      if (d + (k - 1) * gap > xs.size()) break;
      SpreadingRow row;
      row.start = d;
      FinVec sum;
      for (std::size_t j = 0; j < k; ++j) {
        row.tuple.push_back(d + j * gap);
        sum += xs[d + j * gap - 1];
      }
      row.value = norm(sum, n);
      res.table.push_back(std::move(row));
    }
  }
  const Scalar kk = long(k);
  bool l1 = true, c0 = true;
  for (const auto& r : res.table) {
    if (r.value * 2 < kk) l1 = false;
    if (r.value > 2) c0 = false;
  }
  res.classification = l1 ? "l1-like" : (c0 ? "c0-like" : "inconclusive");
  return res;
}

SubseqResult c0_subseq_select(const std::vector<FinVec>& xs, const std::vector<Scalar>& sup_bounds, const Scalar& target,
                              std::size_t min_count) {
  const NormSpec s = NormSpec::schreier(1);
  SubseqResult res;
  std::vector<FinVec> chosen;
  for (std::size_t i = 1; i <= xs.size() && chosen.size() < 20; ++i) {
    const FinVec& x = xs[i - 1];
    if (x.is_zero()) continue;
    if (!chosen.empty() && x.min_index() <= chosen.back().max_index()) continue;
    if (!sup_bounds.empty() && (chosen.size() >= sup_bounds.size() || sup_norm(x) > sup_bounds[chosen.size()])) continue;
    std::vector<FinVec> trial = chosen;
    trial.push_back(x);
    const Scalar c = c0_equiv_constant_disjoint(trial, s);
    if (c > target) continue;
    chosen = std::move(trial);
    res.indices.push_back(i);
    res.constant = c;
  }
  const std::size_t need = std::min(min_count, xs.size());
  res.found = !chosen.empty() && chosen.size() >= need;
  if (!res.found) res.failure = "TargetUnreachable";
  return res;
}

}  // namespace wuq
