#include "wuq/replay.hpp"

#include "wuq/error.hpp"

namespace wuq {

namespace {

Scalar flag(bool ok) { return ok ? Scalar(0) : Scalar(1); }

Clause same_text(const std::string& what, const Node& given, const Node& recomputed) {
  return Clause::less_eq(what + " recomputes byte for byte", flag(serialize_node(given) == serialize_node(recomputed)),
                         Scalar(0));
}

/// max over d in {+-1}^s with d_1 = +1 of ||sum d_i v_i||.
Scalar sign_maximum(const std::vector<FinVec>& vs, const NormSpec& n) {
  Scalar best = 0;
  const std::size_t s = vs.size();
  if (s == 0) return best;
  for (std::size_t mask = 0; mask < (std::size_t(1) << (s - 1)); ++mask) {
    FinVec sum = vs[0];
    for (std::size_t i = 1; i < s; ++i) {
      if (mask & (std::size_t(1) << (i - 1)))
        sum -= vs[i];
      else
        sum += vs[i];
    }
    const Scalar v = norm(sum, n);
    if (v > best) best = v;
  }
  return best;
}

}  // namespace

InequalityReport check_uncond_certificate(const Scene& scene, const UncondCertificate& cert) {
  const QuotientModel& model = *scene.model;
  const NormSpec& zn = model.cod_norm();
  const NormSpec& xn = model.dom_norm();
  const Blocking& dom = scene.dom;
  const std::size_t L = dom.block_count();
  const std::vector<std::size_t>& p = cert.p;
  const std::size_t s = p.size();
  InequalityReport rep;
  rep.lemma = "unconditional certificate";
  auto e = [&](long i) -> Scalar { return scene.schedule.eps(i); };

  bool ordered = s >= 3 && p[0] >= 2 && p.back() < L;
  for (std::size_t i = 1; i < s; ++i) ordered = ordered && p[i - 1] < p[i];
  rep.hypotheses.push_back(Clause::less_eq("1 < p_1 < ... < p_s < L, s >= 3", flag(ordered), 0));
  if (!ordered) return rep;
  const OperatorNormBounds tb = operator_norm_bounds(model.matrix(), xn, zn, scene.norms);
  rep.clauses.push_back(Clause::less_eq("C matches the model", flag(cert.covering == model.covering()), 0));
  rep.clauses.push_back(Clause::less_eq("||T|| lower bound recomputes", flag(cert.t_norm_lower == tb.lower), 0));
  rep.clauses.push_back(Clause::less_eq("bound = 1 + C ||T||", flag(cert.bound == 1 + model.covering() * tb.lower), 0));

  for (std::size_t ri = 0; ri < cert.runs.size(); ++ri) {
    const UncondRun& run = cert.runs[ri];
    const long tag = long(ri + 1);
    if (run.a.size() != s || run.r.size() + 1 != s || run.plans.size() + 1 != s || run.xbar.size() != s) {
      rep.clauses.push_back(Clause::less_eq("run has one entry per selected index", Scalar(1), Scalar(0), {tag}));
      continue;
    }
    FinVec y;
    std::vector<FinVec> ay(s);
    for (std::size_t i = 0; i < s; ++i) {
      ay[i] = run.a[i] * scene.ys[p[i] - 1];
      y += ay[i];
    }
    const bool zero = y.is_zero();
    if (!zero) rep.clauses.push_back(Clause::less_eq("||sum a_i y_i|| = 1", flag(norm(y, zn) == 1), 0, {tag}));
    rep.clauses.push_back(Clause::less_eq("T x = y", flag(model.matrix().apply(run.x) == y), 0, {tag}));
    rep.clauses.push_back(Clause::less_eq("||x|| <= C", norm(run.x, xn), model.covering(), {tag}));

    // xbar is x scaled blockwise by the ramps of the windows.
    std::vector<Scalar> coef(L, Scalar(1));
    bool plans_ok = true;
    for (std::size_t i = 1; i < s; ++i) {
      const RampPlan& plan = run.plans[i - 1];
      plans_ok = plans_ok && plan.n == p[i - 1] && plan.m + 1 == p[i] && !plan.i.empty() &&
                 run.r[i - 1] == plan.i.back() + 1;
      if (!plans_ok) break;
      const auto c = ramp_coefficients(plan, L).values();
      for (std::size_t b = 0; b < L; ++b) coef[b] *= c[b];
    }
    rep.clauses.push_back(Clause::less_eq("plans sit in (p_i, p_{i+1} - 1) and r_i = i_k + 1", flag(plans_ok), 0, {tag}));
    if (!plans_ok) continue;
    const FinVec xbar = comb_scale(block_decompose(run.x, dom), CombCoefficients(coef));
    FinVec sum;
    for (const auto& b : run.xbar) sum += b.sum();
    rep.clauses.push_back(Clause::less_eq("sum xbar_i = ramped x", flag(sum == xbar), 0, {tag}));
    Scalar four = 0;
    std::vector<FinVec> pieces(s);
    for (std::size_t i = 1; i <= s; ++i) {
      const std::size_t lo = i == 1 ? 1 : run.r[i - 2];
      const std::size_t hi = i < s ? run.r[i - 1] : L;
      pieces[i - 1] = run.xbar[i - 1].sum();
      rep.clauses.push_back(Clause::less_eq("xbar_i = P_[r_{i-1}, r_i] xbar",
                                            flag(pieces[i - 1] == project_blocks(dom, lo, hi, xbar)), 0, {tag, long(i)}));
      if (i < s) {
        rep.clauses.push_back(Clause::less("r_{i-1} < p_i < r_i", Scalar(long(i == 1 ? 1 : run.r[i - 2])),
                                           Scalar(long(p[i - 1])), {tag, long(i)}));
        rep.clauses.push_back(Clause::less("p_i < r_i", Scalar(long(p[i - 1])), Scalar(long(run.r[i - 1])), {tag, long(i)}));
        rep.clauses.push_back(Clause::less_eq("P_{r_i} xbar = 0",
                                              flag(project_blocks(dom, run.r[i - 1], run.r[i - 1], xbar).is_zero()), 0,
                                              {tag, long(i)}));
        const FinVec gi = project_blocks(dom, p[i - 1] + 1, p[i], run.x);
        const FinVec gbar = project_blocks(dom, p[i - 1] + 1, p[i], xbar);
        rep.clauses.push_back(Clause::less("||T g_i - T gbar_i|| < eps_{p_i}", norm(model.matrix().apply(gi - gbar), zn),
                                           e(long(p[i - 1])), {tag, long(i)}));
      }
      const long prev = i == 1 ? 0 : long(p[i - 2]);
      rep.clauses.push_back(Clause::less("||T xbar_i - a_i y_i|| < 4 eps_{p_{i-1}-1}",
                                         norm(model.matrix().apply(pieces[i - 1]) - ay[i - 1], zn), 4 * e(prev - 1),
                                         {tag, long(i)}));
      four += 4 * e(prev - 1);
    }
    rep.clauses.push_back(Clause::less("sum 4 eps_{p_{i-1}-1} < 1", four, Scalar(1), {tag}));
    const Scalar measured = zero ? Scalar(0) : sign_maximum(ay, zn);
    rep.clauses.push_back(Clause::less_eq("measured maximum recomputes", flag(measured == run.measured), 0, {tag}));
    Scalar claims = 0;
    for (std::size_t i = 0; i < s; ++i) claims += norm(model.matrix().apply(pieces[i]) - ay[i], zn);
    rep.clauses.push_back(Clause::less_eq("max ||sum d_i a_i y_i|| <= sum claims + ||T|| max ||sum d_i xbar_i||", measured,
                                          claims + tb.upper * sign_maximum(pieces, xn), {tag}));
    rep.clauses.push_back(Clause::less_eq("max ||sum d_i xbar_i|| <= C", sign_maximum(pieces, xn), model.covering(), {tag}));
    rep.clauses.push_back(Clause::less_eq("max ||sum d_i a_i y_i|| <= 1 + C ||T||", measured, cert.bound, {tag}));
  }
  return rep;
}

VerifyOutcome verify_norm_certificate(const Node& n) {
  const NormCertificateRecord r = decode_norm_certificate(n);
  VerifyOutcome out{"norm", false, false, {}};
  InequalityReport& rep = out.report;
  rep.lemma = "norm certificate";
  rep.clauses.push_back(
      Clause::less_eq("witness replays", flag(replay_certificate(r.vector, r.space, r.certificate)), 0));
  if (r.vector.support_size() <= NormConfig{}.oracle_support_cap)
    rep.clauses.push_back(Clause::less_eq("value equals the exhaustive oracle",
                                          flag(norm_brute_oracle(r.vector, r.space) == r.certificate.value), 0));
  NormCertificateRecord again{r.space, r.vector, norm_eval(r.vector, r.space)};
  rep.clauses.push_back(same_text("norm certificate", n, encode_norm_certificate(again)));
  out.pass = rep.clauses_hold();
  return out;
}

VerifyOutcome verify_schedule_certificate(const Node& n) {
  const ScheduleCertificateRecord r = decode_schedule_certificate(n);
  VerifyOutcome out{"schedule", false, !r.report.pass, {}};
  InequalityReport& rep = out.report;
  rep.lemma = "schedule certificate";
  const ScheduleReport again = validate_schedule(r.schedule);
  rep.clauses.push_back(Clause::less_eq("verdict recomputes", flag(again.pass == r.report.pass), 0));
  rep.clauses.push_back(same_text("schedule certificate", n, encode_schedule_certificate({r.schedule, again})));
  out.pass = rep.clauses_hold();
  return out;
}

VerifyOutcome verify_uncond_certificate(const Node& n) {
  const UncondCertificateRecord r = decode_uncond_certificate(n);
  VerifyOutcome out{"unconditional", false, !r.result.found, {}};
  InequalityReport& rep = out.report;
  rep.lemma = "unconditional certificate";
  if (r.result.found) rep.append(check_uncond_certificate(r.scene.scene, r.result.certificate));
  UncondCertificateRecord again{r.scene, r.coefficients, extract_unconditional(r.scene.scene, r.coefficients)};
  rep.clauses.push_back(same_text("unconditional certificate", n, encode_uncond_certificate(again)));
  out.pass = rep.hypotheses_hold() && rep.clauses_hold();
  return out;
}

VerifyOutcome verify_witness_certificate(const Node& n) {
  const WitnessCertificateRecord r = decode_witness_certificate(n);
  VerifyOutcome out{"witness", false, !r.report.found, {}};
  const auto model = r.model.build();
  InequalityReport& rep = out.report;
  rep.lemma = "witness certificate";
  if (r.report.found) rep.append(replay_witness(*model, r.ys, r.report, r.options));
  WitnessCertificateRecord again = r;
  again.report = s1_witness_search(*model, r.ys, r.budget, r.options);
  rep.clauses.push_back(same_text("witness certificate", n, encode_witness_certificate(again)));
  out.pass = rep.clauses_hold();
  return out;
}

VerifyOutcome verify_trace(const Node& n) {
  const TraceRecord r = decode_trace(n);
  const ContradictionCheck check = theorem_b_contradiction_check(r.trace);
  VerifyOutcome out{"contradiction", check.verdict == "CONTRADICTION", false, check.report};
  out.report.lemma = check.verdict;
  return out;
}

VerifyOutcome verify_scene(const Node& n, const std::vector<std::string>& lemmas) {
  const SceneRecord r = decode_scene(n);
  VerifyOutcome out{"scene", false, false, {}};
  std::vector<std::string> ids = lemmas;
  if (ids.empty()) {
    ids = {"1.4", "1.5"};
    if (!r.scene.coefficients.empty()) ids.push_back("1.2");
    if (!r.scene.coefficients.empty() && !r.scene.p.empty()) ids.push_back("1.3");
    if (r.scene.x && r.scene.window) {
      ids.push_back("1.6a");
      ids.push_back("1.6b");
    }
  }
  const InequalityReport hyps = check_hypotheses(r.scene);
  out.report.lemma = "scene";
  out.report.hypotheses = hyps.hypotheses;
  for (const auto& id : ids) {
    InequalityReport one = check_lemma(id, r.scene, hyps);
    for (auto& c : one.clauses) c.description = id + ": " + c.description;
    // The shared hypotheses lead every lemma report; keep only the lemma's own.
    for (std::size_t h = hyps.hypotheses.size(); h < one.hypotheses.size(); ++h) {
      one.hypotheses[h].description = id + ": " + one.hypotheses[h].description;
      out.report.hypotheses.push_back(std::move(one.hypotheses[h]));
    }
    for (auto& c : one.clauses) out.report.clauses.push_back(std::move(c));
  }
  out.pass = out.report.hypotheses_hold() && out.report.clauses_hold();
  return out;
}

VerifyOutcome verify_node(const Node& n, const std::vector<std::string>& lemmas) {
  if (n.key == "scene") return verify_scene(n, lemmas);
  const std::string kind = certificate_kind(n);
  if (kind == "norm") return verify_norm_certificate(n);
  if (kind == "schedule") return verify_schedule_certificate(n);
  if (kind == "unconditional") return verify_uncond_certificate(n);
  if (kind == "witness") return verify_witness_certificate(n);
  if (kind == "contradiction") return verify_trace(n);
  throw ParseError(n.line, n.column, "unknown certificate kind '" + kind + "'");
}

}  // namespace wuq
