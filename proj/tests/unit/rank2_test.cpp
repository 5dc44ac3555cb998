#include <doctest.h>

#include <algorithm>

#include "clusterlab/catalog.hpp"
#include "clusterlab/rank2.hpp"
#include "clusterlab/seed.hpp"

using namespace clusterlab;

namespace {

const std::vector<std::pair<long, long>> kFinite{{0, 0}, {1, 1}, {1, 2}, {2, 1}, {1, 3}, {3, 1}};

LaurentPoly y(std::size_t i, Exponent p = 1) { return LaurentPoly::variable(2, i, p); }
LaurentPoly k(long v) { return LaurentPoly::constant(2, v); }

Rational rat(long n, long d) {
  Rational q(n, d);
  q.canonicalize();
  return q;
}

std::vector<Integer> ints(std::initializer_list<long> v) { return {v.begin(), v.end()}; }

}  // namespace

TEST_CASE("Coxeter numbers") {
  CHECK(coxeter_number(0, 0) == 2u);
  CHECK(coxeter_number(1, 1) == 3u);
  CHECK(coxeter_number(1, 2) == 4u);
  CHECK(coxeter_number(1, 3) == 6u);
  CHECK_FALSE(coxeter_number(2, 2).has_value());
  CHECK_FALSE(coxeter_number(1, 4).has_value());
  CHECK_THROWS(coxeter_number(0, 1));
  CHECK_THROWS(coxeter_number(-1, -1));
}

TEST_CASE("Weyl group") {
  for (const auto& [b, c] : kFinite) {
    const auto sys = Rank2System::make(b, c);
    CHECK(sys.s1 * sys.s1 == identity2());
    CHECK(sys.s2 * sys.s2 == identity2());
    CHECK(sys.s1_co * sys.s1_co == identity2());
    CHECK(sys.s2_co * sys.s2_co == identity2());
    // Order of s1 s2 by brute force.
    Mat2 w = sys.s1 * sys.s2;
    std::size_t order = 1;
    while (!(w == identity2())) {
      w = w * sys.s1 * sys.s2;
      ++order;
    }
    CHECK(order == *sys.h);
    const auto w0 = weyl_word_action(sys, 1, *sys.h);
    CHECK(w0 == weyl_word_action(sys, 2, *sys.h));
    const Mat2 expected = (b == 1 && c == 1) ? Mat2{{{0, -1}, {-1, 0}}} : Mat2{{{-1, 0}, {0, -1}}};
    CHECK(w0 == expected);
    CHECK(weyl_word_action(sys, 1, *sys.h, true) == weyl_word_action(sys, 2, *sys.h, true));
  }
  CHECK(weyl_word_action(Rank2System::make(2, 2), 1, 0) == identity2());
}

TEST_CASE("denominator recurrence") {
  for (long b = 0; b <= 3; ++b) {
    for (long c = b == 0 ? 0 : 1; c <= (b == 0 ? 0 : 3); ++c) {
      const auto d = denominator_sequence(b, c, -1, 4);
      CHECK(d.at(1) == Root{-1, 0});
      CHECK(d.at(2) == Root{0, -1});
      CHECK(d.at(3) == Root{1, 0});
      CHECK(d.at(4) == Root{b, 1});
      CHECK(d.at(0) == Root{0, 1});
      CHECK(d.at(-1) == Root{1, c});
    }
  }
  const auto a1a1 = denominator_sequence(0, 0, 1, 9);
  for (long m = 1; m <= 5; ++m) CHECK(a1a1.at(m + 4) == a1a1.at(m));
  CHECK(a1a1.at(3) == Root{1, 0});
  CHECK(a1a1.at(4) == Root{0, 1});
  CHECK_THROWS(denominator_sequence(1, 1, 2, 5));
}

TEST_CASE("denominator theorem in the finite types") {
  for (const auto& [b, c] : kFinite) {
    const auto r = verify_denominator_theorem(b, c, -12, 20);
    CHECK(r.mismatches == 0);
    CHECK(r.periodic);
    CHECK(r.ok());
    // {delta(m) : 3 <= m <= h + 2} is the set of positive roots.
    const auto sys = Rank2System::make(b, c);
    std::vector<Root> census;
    for (long m = 3; m <= static_cast<long>(*sys.h) + 2; ++m) census.push_back(r.rows[static_cast<std::size_t>(m + 12)].engine);
    const auto roots = positive_roots(sys);
    CHECK(roots.size() == *sys.h);
    for (const auto& root : roots) CHECK(std::count(census.begin(), census.end(), root) == 1);
  }
  const std::vector<Root> b2{{0, 1}, {1, 0}, {1, 1}, {1, 2}};
  CHECK(positive_roots(Rank2System::make(1, 2)) == b2);
}

TEST_CASE("denominator theorem in infinite types") {
  for (const auto& [b, c] : std::vector<std::pair<long, long>>{{2, 2}, {1, 4}}) {
    const auto r = verify_denominator_theorem(b, c, 1, 20);
    CHECK(r.mismatches == 0);
    CHECK(r.distinct);
    CHECK(r.ok());
    const auto back = verify_denominator_theorem(b, c, -8, 2);
    CHECK(back.ok());
    for (const auto& row : r.rows)
      if (row.m >= 3) CHECK(row.engine.positive());
  }
  CHECK_THROWS(positive_roots(Rank2System::make(2, 2)));
  const auto affine = positive_roots(Rank2System::make(2, 2), 9);
  // Real roots of the affine system: (k, k+1) and (k+1, k).
  CHECK(affine.size() == 10);
  for (const auto& r : affine) CHECK(abs(r.d1 - r.d2) == 1);
}

TEST_CASE("explicit Laurent expansions with unit coefficients") {
  auto b2 = rank2_cluster_variables(1, 2, 1, 6);
  CHECK(mul(b2.at(4), mul(y(0), y(1))) == add(add(y(0), k(1)), y(1, 2)));
  CHECK(b2.at(6) == mul(add(y(0), k(1)), y(1, -1)));
  auto g2 = rank2_cluster_variables(1, 3, 1, 10);
  const auto y1p1 = add(y(0), k(1));
  const auto num = add(pow(y1p1, 3), mul(y(1, 3), add(add(y(1, 3), mul(k(3), y(0))), k(2))));
  CHECK(mul(g2.at(5), mul(y(0, 2), y(1, 3))) == num);
  CHECK(g2.at(9) == y(0));
  CHECK(g2.at(10) == y(1));
}

TEST_CASE("u recurrence") {
  const SemifieldElem u1 = PositiveRational(rat(3, 7));
  const SemifieldElem u2 = PositiveRational(rat(11, 5));
  const auto a1a1 = u_sequence(u1, u2, 0, 0, 4);
  CHECK(a1a1[2] == inverse(u1));
  CHECK(a1a1[3] == inverse(u2));
  const auto a2 = u_sequence(u1, u2, 1, 1, 7);
  const Rational x = rat(3, 7);
  const Rational z = rat(11, 5);
  CHECK(a2[2] == SemifieldElem(PositiveRational((1 + z) / x)));
  CHECK(a2[3] == SemifieldElem(PositiveRational((1 + x + z) / (x * z))));
  CHECK(a2[4] == SemifieldElem(PositiveRational((1 + x) / z)));
  CHECK(a2[5] == u1);
  CHECK(a2[6] == u2);

  // Max-plus exponents follow d_{m+1} = e(m) max(d_m, 0) - d_{m-1}, with e(m) = c for m odd.
  for (const auto& [b, c] : std::vector<std::pair<long, long>>{{1, 2}, {2, 2}, {3, 1}}) {
    const auto mp = u_sequence(MaxPlusInt{-3}, MaxPlusInt{2}, b, c, 12);
    std::vector<long> d{-3, 2};
    for (std::size_t m = 2; d.size() < 12; ++m) d.push_back((m % 2 != 0 ? c : b) * std::max(d[m - 1], 0L) - d[m - 2]);
    for (std::size_t i = 0; i < 12; ++i) CHECK(mp[i] == SemifieldElem(MaxPlusInt{d[i]}));
  }
  CHECK_THROWS_AS(u_sequence(u1, MaxPlusInt{1}, 1, 1, 4), InstanceMismatch);
}

TEST_CASE("periodicity") {
  for (const auto& [b, c] : kFinite) {
    const auto r = verify_periodicity(b, c, 100, 3);
    CHECK(r.failures == 0);
    CHECK(r.engine_periodic);
    CHECK(r.period == *r.h + 2);
    CHECK(r.ok());
  }
  const auto inf = verify_periodicity(2, 2, 5, 3);
  CHECK_FALSE(inf.period.has_value());
  CHECK(inf.ok());
}

TEST_CASE("r from q") {
  CHECK(r_from_q(0, 0, 1) == ints({1}));
  CHECK(r_from_q(1, 1, 1) == ints({1, 1}));
  CHECK(r_from_q(1, 2, 1) == ints({1, 1, 1}));
  CHECK(r_from_q(1, 2, 2) == ints({1, 2, 1}));
  CHECK(r_from_q(1, 3, 1) == ints({1, 1, 2, 1, 1}));
  CHECK(r_from_q(1, 3, 2) == ints({1, 3, 2, 3, 1}));
  CHECK_THROWS(r_from_q(2, 2, 1));
  for (const auto& [b, c] : kFinite) {
    const auto r = verify_coefficient_identities(b, c, 100, 5);
    CHECK(r.rational_failures == 0);
    CHECK(r.tropical_failures == 0);
    CHECK(r.rational_checks > 0);
  }
}

TEST_CASE("geometric rank-2 patterns") {
  CHECK(rank2_geometric_matrix(1, 1) == grassmannian_2_5_matrix());
  for (const auto& [b, c] : kFinite) {
    const auto m = rank2_geometric_matrix(b, c);
    CHECK(m.frozen() == *coxeter_number(b, c) + 2);
    CHECK(audit_axioms(m, std::vector<std::size_t>{0, 1, 0, 1, 0, 1}).ok());
  }
}
