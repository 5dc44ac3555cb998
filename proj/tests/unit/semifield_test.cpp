#include <doctest.h>

#include "clusterlab/catalog.hpp"
#include "clusterlab/random.hpp"
#include "clusterlab/semifield.hpp"

using namespace clusterlab;

namespace {

Tropical trop(std::vector<long> e) {
  Tropical t;
  for (long x : e) t.exponents.emplace_back(x);
  return t;
}

SemifieldElem random_elem(Rng& rng, int instance) {
  switch (instance) {
    case 0:
      return trop({rng.uniform(-5, 5), rng.uniform(-5, 5), rng.uniform(-5, 5)});
    case 1:
      return PositiveRational(Rational(rng.uniform(1, 50), rng.uniform(1, 50)));
    case 2:
      return MaxPlusInt{rng.uniform(-20, 20)};
    default:
      return Trivial{};
  }
}

}  // namespace

TEST_CASE("oplus in each instance") {
  CHECK(oplus(trop({2, 1}), trop({1, 3})) == SemifieldElem(trop({1, 1})));
  CHECK(oplus(PositiveRational(Rational(1, 2)), PositiveRational(Rational(1, 3))) ==
        SemifieldElem(PositiveRational(Rational(5, 6))));
  CHECK(oplus(MaxPlusInt{3}, MaxPlusInt{5}) == SemifieldElem(MaxPlusInt{5}));
  CHECK(oplus(Trivial{}, Trivial{}) == SemifieldElem(Trivial{}));
  CHECK_THROWS_AS(oplus(MaxPlusInt{3}, Trivial{}), InstanceMismatch);
  CHECK_THROWS_AS(oplus(trop({1}), trop({1, 2})), InstanceMismatch);
  CHECK_THROWS(PositiveRational(Rational(0)));
}

TEST_CASE("normalize_pair") {
  CHECK(normalize_pair(Trivial{}) == std::pair<SemifieldElem, SemifieldElem>{Trivial{}, Trivial{}});
  const auto [p, pp] = normalize_pair(trop({1, 0}));
  CHECK(p == SemifieldElem(trop({1, 0})));
  CHECK(pp == SemifieldElem(trop({0, 0})));
  const auto [r, rr] = normalize_pair(PositiveRational(Rational(3)));
  CHECK(r == SemifieldElem(PositiveRational(Rational(3, 4))));
  CHECK(rr == SemifieldElem(PositiveRational(Rational(1, 4))));
}

TEST_CASE("semifield laws and normalization hold in every instance") {
  Rng rng(17);
  for (int instance = 0; instance < 4; ++instance) {
    for (int trial = 0; trial < 200; ++trial) {
      const auto a = random_elem(rng, instance);
      const auto b = random_elem(rng, instance);
      const auto c = random_elem(rng, instance);
      CHECK(oplus(a, b) == oplus(b, a));
      CHECK(oplus(oplus(a, b), c) == oplus(a, oplus(b, c)));
      CHECK(mul(a, b) == mul(b, a));
      CHECK(mul(mul(a, b), c) == mul(a, mul(b, c)));
      CHECK(mul(a, oplus(b, c)) == oplus(mul(a, b), mul(a, c)));
      CHECK(mul(a, inverse(a)) == one_like(a));
      const auto [p, pp] = normalize_pair(a);
      CHECK(is_one(oplus(p, pp)));
      CHECK(div(p, pp) == a);
    }
  }
}

TEST_CASE("coefficient mutation fixed point and rank-2 chain") {
  CoefficientTuple trivial{{}, {Trivial{}, Trivial{}}};
  CHECK(mutate_coefficients(trivial, rank2_matrix(1, 1), 0) == trivial);

  // Rank 2, b = c = 1, at t_1 the tuple is (u_2, 1/u_1); mutating at 1 gives
  // u_3 = (1 + u_2)/u_1 in position 2.
  const Rational u1(2, 7);
  const Rational u2(5, 3);
  CoefficientTuple t{{}, {PositiveRational(u2), PositiveRational(1 / u1)}};
  const auto m = mutate_coefficients(t, ExchangeMatrix::square({{0, -1}, {1, 0}}), 0);
  CHECK(m.u[0] == SemifieldElem(PositiveRational(1 / u2)));
  CHECK(m.u[1] == SemifieldElem(PositiveRational((1 + u2) / u1)));
}

TEST_CASE("tropical coefficient mutation equals frozen-row mutation") {
  Rng rng(23);
  for (int trial = 0; trial < 300; ++trial) {
    const std::size_t n = 1 + rng.below(4);
    const std::size_t f = 1 + rng.below(3);
    const auto b = random_skew_symmetrizable(rng, n, 3, f);
    const std::size_t k = rng.below(n);
    const auto from_rows = coefficients_from_matrix(mutate(b, k));
    const auto from_semifield = mutate_coefficients(coefficients_from_matrix(b), b, k);
    CHECK(from_rows == from_semifield);
  }
}

TEST_CASE("coefficients from a matrix") {
  CHECK(coefficients_from_matrix(rank2_matrix(1, 1)).u == std::vector<SemifieldElem>{Trivial{}, Trivial{}});
  const auto rank1 = ExchangeMatrix::from_rows(2, {{0}, {1}, {-1}});
  const auto u = coefficients_from_matrix(rank1, {"p", "pp"});
  CHECK(u.u[0] == SemifieldElem(trop({1, -1})));
  const auto [p, pp] = normalize_pair(u.u[0]);
  CHECK(p == SemifieldElem(trop({1, 0})));
  CHECK(pp == SemifieldElem(trop({0, 1})));
}

TEST_CASE("coefficient tuple JSON round trip") {
  CoefficientTuple t{{"q1", "q2"}, {trop({1, 0}), trop({-2, 3})}};
  const auto j = to_json(t);
  CHECK(j["u"][1].dump() == R"({"q1":-2,"q2":3})");
  CHECK(coefficients_from_json(j) == t);
  CoefficientTuple r{{}, {PositiveRational(Rational(3, 4)), PositiveRational(Rational(5))}};
  CHECK(coefficients_from_json(to_json(r)) == r);
  CoefficientTuple m{{}, {MaxPlusInt{-3}}};
  CHECK(coefficients_from_json(to_json(m)) == m);
  CHECK(to_string(trop({2, 0, -1}), {"a", "b", "c"}) == "a^2*c^-1");
}
