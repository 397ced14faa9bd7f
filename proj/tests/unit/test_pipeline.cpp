#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "generators.hpp"
#include "oracles.hpp"
#include "wuq/error.hpp"
#include "wuq/pipeline.hpp"
#include "wuq/replay.hpp"

using namespace wuq;
using namespace wuq::testing;

namespace {

Scene identity_scene(std::size_t n, const NormSpec& norm) {
  Scene s;
  s.model = std::make_shared<QuotientModel>(Matrix::identity(n), norm, norm, norm, 1);
  s.schedule = build_schedule(n);
  s.dom_tilde = s.cod_tilde = s.dom = s.cod = Blocking::singletons(n);
  for (std::size_t j = 1; j <= n; ++j) s.ys.push_back(FinVec::unit(Index(j)));
  return s;
}

// Sign-flip maximum computed from scratch with the brute-force Schreier norm.
Scalar sign_max(const Scene& s, const std::vector<std::size_t>& p, const std::vector<Scalar>& a) {
  FinVec base;
  for (std::size_t i = 0; i < p.size(); ++i) base += a[i] * s.ys[p[i] - 1];
  const Scalar scale = 1 / oracle::schreier(base, 1);
  Scalar best = 0;
  for (unsigned mask = 0; mask < (1u << p.size()); ++mask) {
    FinVec v;
    for (std::size_t i = 0; i < p.size(); ++i) v += Scalar((mask >> i) & 1 ? -1 : 1) * a[i] * s.ys[p[i] - 1];
    best = std::max(best, Scalar(scale * oracle::schreier(v, 1)));
  }
  return best;
}

}  // namespace

TEST_CASE("index plan") {
  const EpsilonSchedule s = build_schedule(24);
  CHECK(plan_indices(s, 24, 12) == std::vector<std::size_t>{2, 9, 16, 23});
  CHECK(plan_indices(s, 24, 2) == std::vector<std::size_t>{2, 9});
  const auto wide = plan_indices(s, 24, 12, {1});
  REQUIRE(wide.size() >= 2);
  CHECK(wide[1] == 10);
}

TEST_CASE("identity extraction") {
  const Scene s = identity_scene(24, NormSpec::schreier(1));
  const ExtractResult single = extract_unconditional(s, {{1, 0, 0, 0}});
  REQUIRE(single.found);
  CHECK(single.certificate.p == std::vector<std::size_t>{2, 9, 16, 23});
  CHECK(single.certificate.bound == 2);
  CHECK(single.certificate.runs[0].measured == 1);
  CHECK(single.certificate.pass());

  const ExtractResult uniform = extract_unconditional(s, {{1, 1, 1, 1}});
  REQUIRE(uniform.found);
  CHECK(uniform.certificate.runs[0].measured == 1);
  // {2, 9, 16, 23} is not admissible; {9, 16, 23} is.
  CHECK(uniform.certificate.runs[0].scale == ratio(1, 3));
  CHECK(check_uncond_certificate(s, uniform.certificate).clauses_hold());
}

TEST_CASE("too few indices") {
  const Scene s = identity_scene(12, NormSpec::schreier(1));
  CHECK_THROWS_AS(extract_unconditional(s, {}), Error);
}

TEST_CASE("generated certificates hold and match sign enumeration") {
  int certified = 0;
  for (Family f : {Family::BlockDiagonal, Family::Banded, Family::Perturbed, Family::Quotient})
    for (std::uint64_t seed = 1; seed <= 3; ++seed) {
      const auto rec = extraction_scene(make_instance(f, seed), 24);
      if (!rec) continue;
      const Scene& s = rec->scene;
      INFO(std::string(family_name(f)) << " seed " << seed);
      const std::size_t count = plan_indices(s.schedule, s.cod.block_count(), 12).size();
      if (count < 3) {
        CHECK_THROWS_AS(extract_unconditional(s, {}), Error);
        continue;
      }
      const ExtractResult r = extract_unconditional(s, default_coefficients(count));
      if (!r.found) {
        CHECK(r.failure == "FlattenFailed");
        continue;
      }
      const UncondCertificate& c = r.certificate;
      CHECK(c.pass());
      CHECK(c.bound == 1 + c.covering * c.t_norm_lower);
      for (const UncondRun& run : c.runs) {
        CHECK(run.measured <= c.bound);
        CHECK(run.measured == sign_max(s, c.p, run.a));
        const InequalityReport replay = replay_run(s, c, run);
        CHECK(replay.clauses_hold());
        CHECK(replay.clauses.size() == run.report.clauses.size() + 6);
      }
      CHECK(check_uncond_certificate(s, c).clauses_hold());
      ++certified;
    }
  CHECK(certified >= 3);
}

TEST_CASE("tampered certificate is rejected") {
  const Scene s = identity_scene(24, NormSpec::schreier(1));
  ExtractResult r = extract_unconditional(s, {{1, -1, 1, -1}});
  REQUIRE(r.found);
  r.certificate.runs[0].measured = 3;
  CHECK_FALSE(check_uncond_certificate(s, r.certificate).clauses_hold());
}

TEST_CASE("block basis decomposition") {
  const Scene s = identity_scene(24, NormSpec::schreier(1));
  const std::vector<std::size_t> p{2, 9, 16, 23};
  const Prop19Result r = prop19_decompose(s, p, {1, ratio(1, 2), 0, ratio(-1, 4)});
  REQUIRE(r.found);
  CHECK(r.report.clauses_hold());
  FinVec sum;
  for (const auto& xi : r.xs) sum += xi;
  CHECK(sum == r.x);

  const Prop19Result z = prop19_decompose(s, p, {0, 0, 0, 0});
  REQUIRE(z.found);
  CHECK(z.x.is_zero());
  CHECK(z.report.clauses_hold());

  CHECK_THROWS_AS(prop19_decompose(s, p, {3, 0, 0, 0}), Error);

  int replayed = 0;
  for (Family f : {Family::Banded, Family::Perturbed})
    for (std::uint64_t seed = 1; seed <= 3; ++seed) {
      const auto rec = extraction_scene(make_instance(f, seed), 24);
      if (!rec) continue;
      const auto q = plan_indices(rec->scene.schedule, rec->scene.cod.block_count(), 12);
      if (q.size() < 3) continue;
      std::vector<Scalar> a(q.size(), 0);
      a[0] = ratio(1, 2);
      a[1] = ratio(-1, 2);
      const Prop19Result g = prop19_decompose(rec->scene, q, a);
      if (!g.found) continue;
      CHECK(g.report.clauses_hold());
      ++replayed;
    }
  CHECK(replayed >= 1);
}

TEST_CASE("c0 stability probe") {
  const std::vector<std::size_t> p{2, 9, 16, 23};
  const Scene sup = identity_scene(24, NormSpec::sup());
  const C0FixReport r = c0_fix_probe(sup, p, {1, 2, 3, 4});
  REQUIRE(r.found);
  CHECK(r.stable);
  CHECK(r.stable_from == 1);
  CHECK(r.uniform_bound == 1);
  for (std::size_t i = 0; i < r.omegas.size(); ++i) CHECK(r.omegas[i].is_zero());

  const Scene s = identity_scene(24, NormSpec::schreier(1));
  const C0FixReport l1 = c0_fix_probe(s, p, {1, 2, 3, 4});
  CHECK_FALSE(l1.found);
  CHECK(l1.failure == "NotC0Like");
  CHECK_FALSE(l1.violation.empty());
}
