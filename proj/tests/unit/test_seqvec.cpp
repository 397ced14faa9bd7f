#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "oracles.hpp"
#include "wuq/error.hpp"
#include "wuq/seqvec.hpp"

using namespace wuq;

namespace {

std::vector<Index> cuts(std::initializer_list<Index> c) { return std::vector<Index>(c); }

}  // namespace

TEST_CASE("scalars are canonical and formatted as p/q") {
  CHECK(format_scalar(ratio(2, 4)) == "1/2");
  CHECK(format_scalar(Scalar(2)) == "2/1");
  CHECK(format_scalar(ratio(-3, 6)) == "-1/2");
  CHECK(parse_scalar("4/6") == ratio(2, 3));
  CHECK(parse_scalar("-7") == Scalar(-7));
  CHECK_THROWS_AS(parse_scalar("1/0"), Error);
  CHECK_THROWS_AS(parse_scalar("abc"), Error);
  CHECK_THROWS_AS(parse_scalar("1.5"), Error);
  CHECK(pow(ratio(1, 2), 3) == ratio(1, 8));
  CHECK(factorial(5) == Scalar(120));
}

TEST_CASE("finvec stores no zeros") {
  FinVec x{{1, 1}, {3, 0}, {4, ratio(-1, 2)}};
  CHECK(x.support() == std::vector<Index>{1, 4});
  x.set(1, 0);
  CHECK(x.support_size() == 1);
  x.add(4, ratio(1, 2));
  CHECK(x.is_zero());
  CHECK(x.max_index() == 0);
  CHECK_THROWS_AS(x.set(0, 1), Error);
  FinVec a{{1, 1}}, b{{1, -1}, {2, 3}};
  CHECK(a + b == FinVec{{2, 3}});
  CHECK(Scalar(2) * b == FinVec{{1, -2}, {2, 6}});
}

TEST_CASE("restrict") {
  CHECK(restrict(FinVec{{1, 1}, {3, 2}}, IndexSet{3}) == FinVec{{3, 2}});
  CHECK(restrict(FinVec{{1, 1}}, IndexSet{}).is_zero());
  CHECK(restrict(FinVec{{2, 1}, {3, 1}, {4, 1}}, IndexSet{2, 4}) == FinVec{{2, 1}, {4, 1}});
  CHECK(restrict_range(FinVec{{2, 1}, {3, 1}, {4, 1}}, 3, 9) == FinVec{{3, 1}, {4, 1}});
}

TEST_CASE("restrict is idempotent") {
  std::mt19937_64 rng(11);
  const std::vector<Scalar> grid{1, -2, ratio(1, 3)};
  for (int t = 0; t < 200; ++t) {
    const FinVec x = oracle::random_vector(rng, 12, grid);
    std::vector<Index> e;
    for (Index i = 1; i <= 12; ++i)
      if (rng() % 2) e.push_back(i);
    const IndexSet set(e);
    CHECK(restrict(restrict(x, set), set) == restrict(x, set));
  }
}

TEST_CASE("index sets are sorted and duplicate free") {
  CHECK(IndexSet{3, 1, 2}.items() == std::vector<Index>{1, 2, 3});
  CHECK(IndexSet({1, 1}).size() == 1);
  CHECK_THROWS_AS(IndexSet({0, 2}), Error);
}

TEST_CASE("blockings") {
  const Blocking b(cuts({0, 2, 4}));
  CHECK(b.block_count() == 2);
  CHECK(b.first_of(2) == 3);
  CHECK(b.last_of(2) == 4);
  CHECK(b.block_of(3) == 2);
  CHECK(b.block_of(5) == 0);
  CHECK_THROWS_AS(Blocking(cuts({0, 2, 2})), Error);
  CHECK_THROWS_AS(Blocking(cuts({1, 2})), Error);
  const std::vector<Index> sizes{1, 2, 3};
  CHECK(Blocking::from_sizes(sizes) == Blocking(cuts({0, 1, 3, 6})));
  const std::vector<Index> outer{0, 2, 3};
  CHECK(Blocking::from_sizes(sizes).coarsen(outer) == Blocking(cuts({0, 3, 6})));
}

TEST_CASE("project") {
  const Blocking b(cuts({0, 2, 4}));
  const FinVec x{{1, 1}, {3, 1}};
  CHECK(project(b, {1}, x) == FinVec{{1, 1}});
  CHECK(project(b, {}, x).is_zero());
  CHECK(project(b, {1, 2}, x) == x);
  CHECK_THROWS_AS(project(b, {3}, x), Error);
  CHECK_THROWS_AS(project(b, {1}, FinVec{{5, 1}}), Error);
  CHECK(project_blocks(b, 2, 7, x) == FinVec{{3, 1}});
  CHECK(project_blocks(b, 2, 1, x).is_zero());
}

TEST_CASE("projections over a partition sum to the identity") {
  std::mt19937_64 rng(5);
  const Blocking b(cuts({0, 1, 4, 5, 9, 12}));
  for (int t = 0; t < 100; ++t) {
    const FinVec x = oracle::random_vector(rng, 12, {1, ratio(-5, 2)});
    CHECK(project(b, {1, 3}, x) + project(b, {2, 4, 5}, x) == x);
  }
}

TEST_CASE("block_decompose") {
  const BlockVector bv = block_decompose(FinVec{{1, 1}, {3, 1}}, Blocking(cuts({0, 2, 4})));
  REQUIRE(bv.parts.size() == 2);
  CHECK(bv.parts[0] == FinVec{{1, 1}});
  CHECK(bv.parts[1] == FinVec{{3, 1}});
  const BlockVector z = block_decompose(FinVec{}, Blocking(cuts({0, 2, 4})));
  CHECK(z.parts[0].is_zero());
  CHECK(z.parts[1].is_zero());
  const BlockVector c = block_decompose(FinVec{{2, 5}}, Blocking(cuts({0, 1, 2})));
  CHECK(c.parts[0].is_zero());
  CHECK(c.parts[1] == FinVec{{2, 5}});
  CHECK_THROWS_AS(block_decompose(FinVec{{5, 1}}, Blocking(cuts({0, 2, 4}))), Error);

  std::mt19937_64 rng(3);
  for (int t = 0; t < 100; ++t) {
    const FinVec x = oracle::random_vector(rng, 9, {1, ratio(2, 7), -3});
    CHECK(block_decompose(x, Blocking(cuts({0, 3, 4, 9}))).sum() == x);
  }
}

TEST_CASE("comb_scale") {
  const BlockVector bv = block_decompose(FinVec{{1, 1}, {3, 1}}, Blocking(cuts({0, 2, 4})));
  CHECK(comb_scale(bv, CombCoefficients({1, 1})) == bv.sum());
  CHECK(comb_scale(bv, CombCoefficients({0, 0})).is_zero());
  CHECK(comb_scale(bv, CombCoefficients({1, ratio(1, 2)})) == FinVec{{1, 1}, {3, ratio(1, 2)}});
  CHECK_THROWS_AS(comb_scale(bv, CombCoefficients({1})), Error);
  CHECK_THROWS_AS(CombCoefficients({ratio(3, 2)}), Error);
  CHECK_THROWS_AS(CombCoefficients({-1}), Error);

  std::mt19937_64 rng(9);
  for (int t = 0; t < 100; ++t) {
    const FinVec x = oracle::random_vector(rng, 8, {1, -2, ratio(3, 5)});
    const BlockVector b = block_decompose(x, Blocking(cuts({0, 2, 5, 8})));
    const FinVec y = comb_scale(b, CombCoefficients({ratio(1, 3), 0, 1}));
    for (const auto& [i, v] : y.entries()) CHECK(abs(v) <= abs(x.get(i)));
  }
}
