#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "generators.hpp"
#include "oracles.hpp"
#include "wuq/error.hpp"
#include "wuq/saturation.hpp"

using namespace wuq;
using namespace wuq::testing;

namespace {

const NormSpec S1 = NormSpec::schreier(1);

std::vector<FinVec> units(std::size_t n) {
  std::vector<FinVec> out;
  for (std::size_t j = 1; j <= n; ++j) out.push_back(FinVec::unit(Index(j)));
  return out;
}

// Largest subset sum norm over the smallest member norm, by enumeration.
Scalar subset_constant(const std::vector<FinVec>& bs) {
  Scalar lo = oracle::schreier1_sorted(bs[0]);
  for (const auto& b : bs) lo = std::min(lo, oracle::schreier1_sorted(b));
  Scalar hi = 0;
  for (unsigned mask = 1; mask < (1u << bs.size()); ++mask) {
    FinVec v;
    for (std::size_t i = 0; i < bs.size(); ++i)
      if ((mask >> i) & 1) v += bs[i];
    hi = std::max(hi, oracle::schreier1_sorted(v));
  }
  return hi / lo;
}

}  // namespace

TEST_CASE("averages") {
  const std::vector<FinVec> xs{FinVec::unit(5), FinVec::unit(9), FinVec::unit(11), FinVec::unit(14)};
  AverageTree one{1, 1, IndexSet{1}, {}};
  CHECK(build_average(xs, one, NormSpec::sup()) == FinVec::unit(5));
  AverageTree pair{1, ratio(1, 2), IndexSet{1, 2}, {}};
  CHECK(build_average(xs, pair, NormSpec::sup()) == FinVec{{5, ratio(1, 2)}, {9, ratio(1, 2)}});

  AverageTree second{1, ratio(1, 2), IndexSet{3, 4}, {}};
  AverageTree two{2, ratio(1, 2), {}, {pair, second}};
  const FinVec v = build_average(xs, two, S1);
  // Each child is normalized in S before the outer average.
  const FinVec a = build_average(xs, pair, S1), b = build_average(xs, second, S1);
  const FinVec expect = ratio(1, 2) * ((1 / oracle::schreier(a, 1)) * a + (1 / oracle::schreier(b, 1)) * b);
  CHECK(v == expect);
  CHECK(norm(v, S1) == oracle::schreier(v, 1));

  CHECK_THROWS_AS(build_average(xs, AverageTree{1, 1, {}, {}}, S1), Error);
  CHECK_THROWS_AS(build_average(xs, AverageTree{1, 1, IndexSet{7}, {}}, S1), Error);
  CHECK_THROWS_AS(build_average(xs, AverageTree{2, ratio(1, 2), {}, {second, pair}}, S1), Error);
}

TEST_CASE("c0 equivalence constants") {
  CHECK(c0_equiv_constant(units(6), NormSpec::sup()) == 1);
  const std::vector<FinVec> deep{FinVec::unit(5), FinVec::unit(6), FinVec::unit(7), FinVec::unit(8)};
  CHECK(c0_equiv_constant(deep, S1) == 4);
  CHECK(c0_equiv_constant_disjoint(deep, S1) == 4);
  CHECK(c0_equiv_constant(deep, S1) == subset_constant(deep));

  // 1-averages over [n, 2n) with n doubling.
  std::vector<FinVec> avg;
  for (Index n = 2; n <= 16; n *= 2) {
    FinVec v;
    for (Index k = n; k < 2 * n; ++k) v.set(k, ratio(1, n));
    avg.push_back(v);
  }
  const Scalar c = c0_equiv_constant(avg, S1);
  CHECK(c == subset_constant(avg));
  CHECK(c <= 2);
  CHECK_THROWS_AS(c0_equiv_constant(units(24), S1, 20), Error);
}

TEST_CASE("saturation witness on the unit basis") {
  const std::size_t n = 64;
  const QuotientModel id(Matrix::identity(n), S1, S1, S1, 1);
  const SaturationReport r = s1_witness_search(id, units(n), 100000);
  REQUIRE(r.found);
  CHECK(r.constant <= 2);
  CHECK(r.averages.size() >= 3);
  CHECK(r.constant == subset_constant(r.vectors));
  for (std::size_t i = 0; i < r.averages.size(); ++i) {
    CHECK(r.averages[i].level == 1);
    CHECK(r.averages[i].lambda == ratio(1, long(r.averages[i].f.size())));
    CHECK(oracle::admissible(r.averages[i].f.items(), 1));
  }
  CHECK(replay_witness(id, units(n), r).clauses_hold());

  SaturationReport bent = r;
  bent.constant = r.constant / 2;
  CHECK_FALSE(replay_witness(id, units(n), bent).clauses_hold());
}

TEST_CASE("saturation witness edge cases") {
  const QuotientModel sup(Matrix::identity(16), S1, NormSpec::sup(), NormSpec::sup(), 16);
  const SaturationReport c0 = s1_witness_search(sup, units(16), 1000);
  REQUIRE(c0.found);
  CHECK(c0.constant == 1);

  const QuotientModel id(Matrix::identity(16), S1, S1, S1, 1);
  const SaturationReport none = s1_witness_search(id, units(16), 0);
  CHECK_FALSE(none.found);
  CHECK(none.budget_exhausted);
  CHECK(none.averages.empty());
}

TEST_CASE("counting argument on the synthetic trace") {
  for (std::size_t m : {2, 4, 6}) {
    const ContradictionCheck c = theorem_b_contradiction_check(synthetic_trace(m));
    CHECK(c.verdict == "CONTRADICTION");
    CHECK(c.report.clauses_hold());
    REQUIRE_FALSE(c.refuted.empty());
    CHECK(c.refuted.back().description == "2C >= delta m/4");
  }
  CHECK(recorded_names(4).size() == synthetic_trace(4).recorded.size());
  CHECK_THROWS_AS(synthetic_trace(3), Error);
}

TEST_CASE("counting argument gates and incomplete traces") {
  ContradictionTrace small = synthetic_trace(4);
  small.families.push_back(IndexSet{1, 2});
  CHECK(theorem_b_contradiction_check(small).verdict == "PreconditionGate");

  ContradictionTrace missing = synthetic_trace(4);
  missing.xs.pop_back();
  CHECK_THROWS_AS(theorem_b_contradiction_check(missing), Error);

  ContradictionTrace unknown = synthetic_trace(4);
  unknown.recorded.emplace_back("nonsense", 0);
  CHECK_THROWS_AS(theorem_b_contradiction_check(unknown), Error);
}

TEST_CASE("every single mutation is rejected") {
  const auto muts = trace_mutations(4);
  CHECK(muts.size() >= 9 + recorded_names(4).size());
  for (const auto& mu : muts) {
    INFO(mu.target);
    const ContradictionCheck c = theorem_b_contradiction_check(mu.trace);
    CHECK(c.verdict != "CONTRADICTION");
  }
  for (const auto& mu : muts)
    if (mu.target == "(2.2)") {
      const ContradictionCheck c = theorem_b_contradiction_check(mu.trace);
      std::vector<std::string> failed;
      for (const auto& cl : c.report.clauses)
        if (!cl.pass) failed.push_back(cl.description);
      CHECK(failed == std::vector<std::string>{"(2.2) m > 8C/delta"});
    }
}

TEST_CASE("spreading") {
  const SpreadingResult l1 = spreading_probe(units(40), S1, 4, {8, 16, 24});
  CHECK(l1.classification == "l1-like");
  for (const auto& row : l1.table) CHECK(row.value == 4);

  const SpreadingResult c0 = spreading_probe(units(40), NormSpec::sup(), 4, {8, 16, 24});
  CHECK(c0.classification == "c0-like");
  for (const auto& row : c0.table) CHECK(row.value == 1);

  // Unit vectors early, tiny ones late: neither class fits every depth.
  std::vector<FinVec> mixed = units(40);
  for (std::size_t j = 20; j < 40; ++j) mixed[j] *= ratio(1, 100);
  const SpreadingResult mid = spreading_probe(mixed, S1, 4, {4, 12, 30});
  CHECK(mid.classification == "inconclusive");
  CHECK_FALSE(mid.table.empty());

  CHECK_THROWS_AS(spreading_probe(units(10), S1, 4, {8}), Error);
  CHECK_THROWS_AS(spreading_probe(units(10), S1, 2, {1}), Error);
}

TEST_CASE("c0 subsequences") {
  const SubseqResult none = c0_subseq_select(units(32), {}, ratio(3, 2));
  CHECK_FALSE(none.found);
  CHECK(none.failure == "TargetUnreachable");

  const SubseqResult one = c0_subseq_select({FinVec::unit(3)}, {}, 2, 1);
  REQUIRE(one.found);
  CHECK(one.constant == 1);

  std::vector<FinVec> avg;
  for (Index n = 2; n <= 32; n *= 2) {
    FinVec v;
    for (Index k = n; k < 2 * n; ++k) v.set(k, ratio(1, n));
    avg.push_back(v);
  }
  const SubseqResult deep = c0_subseq_select(avg, {}, 2);
  REQUIRE(deep.found);
  CHECK(deep.constant <= 2);
  std::vector<FinVec> chosen;
  for (auto i : deep.indices) chosen.push_back(avg[i - 1]);
  CHECK(deep.constant == subset_constant(chosen));
}
