#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "generators.hpp"
#include "oracles.hpp"
#include "wuq/error.hpp"
#include "wuq/flatten.hpp"

using namespace wuq;
using namespace wuq::testing;

namespace {

const NormSpec S1 = NormSpec::schreier(1);

std::shared_ptr<QuotientModel> model_of(const Matrix& t, Scalar c = 2) {
  return std::make_shared<QuotientModel>(t, S1, S1, S1, std::move(c));
}

}  // namespace

TEST_CASE("a and b parts") {
  const Blocking b = Blocking::singletons(6);
  const auto id = model_of(Matrix::identity(6));
  const ABParts p = ab_parts(block_decompose(FinVec{{1, 1}, {2, -1}, {5, 3}}, b), *id, b);
  for (const auto& a : p.a) CHECK(a.is_zero());
  CHECK(p.b[5] == FinVec{{5, 3}});
  const ABParts z = ab_parts(block_decompose(FinVec{}, b), *id, b);
  for (std::size_t j = 0; j < z.a.size(); ++j) {
    CHECK(z.a[j].is_zero());
    CHECK(z.b[j].is_zero());
  }
}

TEST_CASE("a and b parts add up to the image of each block") {
  std::mt19937_64 rng(6);
  const Blocking dom(std::vector<Index>{0, 2, 3, 5, 6, 8, 9});
  const Blocking cod(std::vector<Index>{0, 1, 3, 4, 6, 8, 9});
  for (int t = 0; t < 20; ++t) {
    Matrix m = Matrix::identity(9);
    for (int k = 0; k < 8; ++k) m.at(1 + rng() % 9, 1 + rng() % 9) += ratio(long(rng() % 5) - 2, 8);
    if (m.rank() < 9) continue;
    const QuotientModel model(m, S1, S1, S1, 100);
    const BlockVector x = block_decompose(oracle::random_vector(rng, 9, {1, -1, ratio(1, 2)}), dom);
    const ABParts p = ab_parts(x, model, cod);
    for (std::size_t j = 1; j <= 6; ++j) {
      const FinVec tw = m.apply(x.part(j));
      std::vector<std::size_t> rest;
      for (std::size_t q = 1; q <= 6; ++q)
        if (q != j && q + 1 != j) rest.push_back(q);
      CHECK(p.t_omega[j] == tw);
      CHECK(p.a[j - 1] + p.b[j] + project(cod, rest, tw) == tw);
    }
  }
}

TEST_CASE("small averages") {
  std::vector<FinVec> alt;
  for (int j = 0; j <= 8; ++j) alt.push_back(Scalar(j % 2 ? -1 : 1) * FinVec::unit(1));
  const AverageSearch a = find_small_average(alt, ratio(1, 10), S1, 0, 9);
  REQUIRE(a.found);
  CHECK(a.indices.size() == 2);
  CHECK(a.indices[1] == a.indices[0] + 1);
  CHECK(a.average == 0);

  const std::vector<FinVec> same(9, FinVec::unit(1));
  const AverageSearch f = find_small_average(same, ratio(1, 2), NormSpec::sup(), 0, 9);
  CHECK_FALSE(f.found);
  CHECK(f.average == 1);

  std::vector<FinVec> units{FinVec{}};
  for (Index j = 1; j <= 9; ++j) units.push_back(FinVec::unit(j));
  const AverageSearch u = find_small_average(units, ratio(1, 4), NormSpec::sup(), 0, 10);
  REQUIRE(u.found);
  CHECK(u.indices.size() == 5);
  CHECK(u.average == ratio(1, 5));

  CHECK_THROWS_AS(find_small_average(units, ratio(1, 4), NormSpec::sup(), 3, 4), Error);
}

TEST_CASE("ramp coefficients") {
  const RampPlan single{1, 6, {2}, {4}};
  const CombCoefficients c = ramp_coefficients(single, 6);
  CHECK(c.values() == std::vector<Scalar>{1, 1, 0, 0, 1, 1});
  const RampPlan wider{0, 9, {1, 3}, {4, 6, 7}};
  const CombCoefficients w = ramp_coefficients(wider, 9);
  CHECK(w.values() ==
        std::vector<Scalar>{1, ratio(1, 2), ratio(1, 2), 0, ratio(1, 3), ratio(1, 3), ratio(2, 3), 1, 1});
  for (const auto& v : w.values()) {
    CHECK(v >= 0);
    CHECK(v <= 1);
  }
}

TEST_CASE("build_ramp") {
  const Blocking b = Blocking::singletons(6);
  CHECK(build_ramp(block_decompose(FinVec{}, b), RampPlan{1, 6, {2}, {4}}).is_zero());
  const FinVec x{{1, 1}, {2, 1}, {3, 1}, {4, 1}, {5, 1}, {6, 1}};
  CHECK(build_ramp(block_decompose(x, b), RampPlan{1, 6, {2}, {4}}) == FinVec{{1, 1}, {2, 1}, {5, 1}, {6, 1}});
  CHECK_THROWS_AS(build_ramp(block_decompose(x, b), RampPlan{1, 6, {4}, {3}}), Error);
  CHECK_THROWS_AS(build_ramp(block_decompose(x, b), RampPlan{1, 9, {2}, {8}}), Error);
}

TEST_CASE("flatten on a diagonal instance") {
  const std::size_t n = 16;
  const auto id = model_of(Matrix::identity(n));
  const Blocking b = Blocking::singletons(n);
  const EpsilonSchedule sched = build_schedule(n);
  const Scalar eps = sched.eps(2);
  const FinVec x{{1, ratio(1, 2)}, {3, eps / 2}, {15, ratio(1, 2)}};
  const FlattenResult r = flatten(x, *id, sched, b, b, 2, 12, eps);
  REQUIRE(r.found);
  CHECK(r.r > 2);
  CHECK(r.r < 12);
  CHECK(project_blocks(b, r.r, r.r, r.xbar).is_zero());
  CHECK(norm(x - r.xbar, S1) < eps);
  CHECK(r.report.clauses_hold());
  const Clause* bad = r.report.first_failure();
  INFO((bad ? bad->description + " " + bad->lhs.get_str() + " vs " + bad->rhs.get_str() : std::string()));
  CHECK(r.report.hypotheses_hold());
}

TEST_CASE("flatten leaves vectors behind the window alone") {
  const std::size_t n = 16;
  const auto id = model_of(Matrix::identity(n));
  const Blocking b = Blocking::singletons(n);
  const FinVec x{{1, ratio(1, 2)}, {2, ratio(1, 2)}};
  const FlattenResult r = flatten(x, *id, build_schedule(n), b, b, 3, 14, build_schedule(n).eps(3));
  REQUIRE(r.found);
  CHECK(r.xbar == x);
}

TEST_CASE("flatten reports an exhausted window with its certificate") {
  // Strong entries just above the diagonal make every a-part as large as
  // the block it comes from.
  const std::size_t n = 14;
  Matrix t = Matrix::identity(n);
  for (std::size_t r = 1; r < n; ++r) t.at(r, r + 1) = ratio(1, 2);
  const auto m = model_of(t, 8);
  const Blocking b = Blocking::singletons(n);
  FinVec x;
  for (Index i = 1; i <= n; ++i) x.set(i, ratio(1, 7));
  const Scalar eps = ratio(1, 100);
  const FlattenResult r = flatten(x, *m, build_schedule(n), b, b, 1, n, eps);
  CHECK_FALSE(r.found);
  CHECK(r.failure == "WindowExhausted");
  CHECK(r.certificate.average >= eps / 3);
}

TEST_CASE("flatten on generated instances") {
  int found = 0;
  for (Family f : {Family::BlockDiagonal, Family::Banded, Family::Perturbed, Family::Quotient})
    for (std::uint64_t seed = 1; seed <= 3; ++seed) {
      const auto ls = lemma_scene(make_instance(f, seed));
      if (!ls) continue;
      const Scene& s = ls->record.scene;
      const FlattenResult& r = ls->flat;
      const auto [n, m] = *s.window;
      INFO(family_name(f) << " seed " << seed);
      CHECK(r.r > n);
      CHECK(r.r < m);
      CHECK(project_blocks(s.dom, r.r, r.r, r.xbar).is_zero());
      const Scalar eps = s.schedule.eps(long(n));
      CHECK(norm(s.model->matrix().apply(*s.x - r.xbar), s.model->cod_norm()) < eps);
      CHECK(r.report.clauses_hold());
      const InequalityReport replay = flatten_estimates(*s.x, r.xbar, *s.model, s.schedule, s.dom, s.cod, r.plan, r.n0, eps);
      CHECK(replay.clauses_hold());
      CHECK(replay.clauses.size() == r.report.clauses.size());
      CHECK(alternating_bound_check(*s.x, *s.model, s.schedule, s.dom, s.cod, n, m).clauses_hold());
      ++found;
    }
  CHECK(found >= 10);
}
