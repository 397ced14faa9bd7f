#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "generators.hpp"
#include "oracles.hpp"
#include "wuq/error.hpp"
#include "wuq/quotient.hpp"

using namespace wuq;

namespace {

const NormSpec S1 = NormSpec::schreier(1);

Matrix row_ones() { return Matrix(1, 2, {1, 1}); }

}  // namespace

TEST_CASE("quotient norms of the one-row map") {
  const QuotientModel sum(row_ones(), NormSpec::sum(), NormSpec::sup(), std::nullopt, 1);
  CHECK(quotient_norm(sum, FinVec{{1, 1}}) == 1);
  const QuotientModel sup(row_ones(), NormSpec::sup(), NormSpec::sup(), std::nullopt, 1);
  CHECK(quotient_norm(sup, FinVec{{1, 1}}) == ratio(1, 2));
  CHECK(min_norm_preimage(sup, FinVec{{1, 1}}, 1) == FinVec{{1, ratio(1, 2)}, {2, ratio(1, 2)}});
  CHECK_THROWS_AS(quotient_norm(sup, FinVec{{2, 1}}), Error);
}

TEST_CASE("identity models") {
  const QuotientModel id(Matrix::identity(6), S1, S1, S1, 1);
  CHECK(id.covering_verified());
  const FinVec y{{2, 1}, {3, -1}, {5, ratio(1, 2)}};
  CHECK(quotient_norm(id, y) == norm(y, S1));
  CHECK(min_norm_preimage(id, y, 1) == y);
  CHECK(covering_constant(QuotientModel(Matrix::identity(3), S1, S1, S1, 1)).value == 1);
}

TEST_CASE("covering constants") {
  const QuotientModel induced(row_ones(), NormSpec::sup(), NormSpec::sup(), std::nullopt, 1);
  CHECK(induced.covering_verified());
  const QuotientModel abs_y(row_ones(), NormSpec::sup(), NormSpec::sup(), NormSpec::sup(), ratio(1, 2));
  CHECK(abs_y.covering_verified());
  CHECK(covering_constant(abs_y).value == ratio(1, 2));
  CHECK_THROWS_AS(QuotientModel(row_ones(), NormSpec::sup(), NormSpec::sup(), NormSpec::sup(), ratio(1, 4)), Error);
  ModelOptions minimal_choice;
  minimal_choice.covering = CoveringChoice::Minimal;
  const QuotientModel minimal(row_ones(), NormSpec::sup(), NormSpec::sup(), NormSpec::sup(), 7, minimal_choice);
  CHECK(minimal.covering() == ratio(1, 2));
}

TEST_CASE("model validation") {
  CHECK_THROWS_AS(QuotientModel(Matrix(), S1, S1, S1, 1), Error);
  CHECK_THROWS_AS(QuotientModel(Matrix::identity(2), S1, S1, S1, 0), Error);
  CHECK_THROWS_AS(QuotientModel(Matrix::identity(2), S1, S1, std::nullopt, ratio(1, 2)), Error);
}

TEST_CASE("preimages solve Tx = y within the slack") {
  std::mt19937_64 rng(4);
  for (int t = 0; t < 25; ++t) {
    Matrix m(3, 5);
    for (std::size_t r = 1; r <= 3; ++r) {
      m.at(r, r) = 1;
      for (std::size_t c = 1; c <= 5; ++c)
        if (c != r && rng() % 3 == 0) m.at(r, c) = ratio(long(rng() % 5) - 2, 2);
    }
    const QuotientModel model(m, S1, S1, std::nullopt, 1);
    FinVec y = oracle::random_vector(rng, 3, {1, -1, ratio(1, 3)});
    if (y.is_zero()) y.set(1, 1);
    const Scalar q = quotient_norm(model, y);
    for (const Scalar& slack : {Scalar(1), ratio(3, 2)}) {
      const FinVec x = min_norm_preimage(model, y, slack);
      CHECK(m.apply(x) == y);
      CHECK(norm(x, S1) <= slack * q);
    }
    // Any preimage bounds the quotient norm from above.
    FinVec direct;
    const auto inv = Matrix(3, 3, {m.at(1, 1), m.at(1, 2), m.at(1, 3), m.at(2, 1), m.at(2, 2), m.at(2, 3), m.at(3, 1),
                                   m.at(3, 2), m.at(3, 3)})
                         .inverse();
    if (inv) {
      direct = inv->apply(y);
      CHECK(q <= norm(direct, S1));
    }
  }
}

TEST_CASE("covering bound through a right inverse") {
  // Two domain coordinates onto one: x = e_1 is a preimage of e_1 of norm 1.
  Matrix m(2, 3);
  m.at(1, 1) = 1;
  m.at(1, 2) = ratio(1, 2);
  m.at(2, 3) = 1;
  const QuotientModel model(m, S1, S1, S1, 2);
  CHECK(covering_upper_bound(model) <= 2);
  CHECK(model.covering_verified());
}

TEST_CASE("generated models carry verified covering constants") {
  using namespace wuq::testing;
  for (Family f : {Family::BlockDiagonal, Family::Banded, Family::Perturbed, Family::Quotient})
    for (std::uint64_t seed = 1; seed <= 3; ++seed) {
      const Instance inst = make_instance(f, seed);
      CHECK(inst.model->covering_verified());
      CHECK(inst.model->matrix().rank() == inst.model->matrix().rows());
    }
}
