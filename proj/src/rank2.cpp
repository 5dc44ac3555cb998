#include "clusterlab/rank2.hpp"

#include <algorithm>
#include <deque>
#include <set>
#include <sstream>
#include <stdexcept>

#include "clusterlab/random.hpp"
#include "clusterlab/seed.hpp"

namespace clusterlab {

namespace {

Mat2 mat(long a, long b, long c, long d) { return {{{Integer(a), Integer(b)}, {Integer(c), Integer(d)}}}; }

bool root_less(const Root& a, const Root& b) {
  const Integer ha = a.d1 + a.d2;
  const Integer hb = b.d1 + b.d2;
  if (ha != hb) return ha < hb;
  return a.d1 < b.d1;
}

Root root_of(const DenominatorVector& d) { return {Integer(static_cast<long>(d.at(0))), Integer(static_cast<long>(d.at(1)))}; }

// Index of y_m in the cluster of t_m and t_{m-1}.
std::size_t slot(long m) { return static_cast<std::size_t>(parity_index(m) - 1); }

Rational random_positive(Rng& rng) {
  Rational q(rng.uniform(1, 1000), rng.uniform(1, 1000));
  q.canonicalize();
  return q;
}

std::size_t require_finite(long b, long c) {
  const auto h = coxeter_number(b, c);
  if (!h) throw std::invalid_argument("the rank-2 system is of infinite type");
  return *h;
}

}  // namespace

Root operator+(const Root& a, const Root& b) { return {a.d1 + b.d1, a.d2 + b.d2}; }
Root operator-(const Root& a, const Root& b) { return {a.d1 - b.d1, a.d2 - b.d2}; }
Root operator*(const Integer& k, const Root& a) { return {k * a.d1, k * a.d2}; }

std::string to_string(const Root& r) { return "(" + r.d1.get_str() + "," + r.d2.get_str() + ")"; }

Mat2 operator*(const Mat2& a, const Mat2& b) {
  Mat2 out;
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) out[i][j] = a[i][0] * b[0][j] + a[i][1] * b[1][j];
  return out;
}

Root operator*(const Mat2& a, const Root& r) {
  return {a[0][0] * r.d1 + a[0][1] * r.d2, a[1][0] * r.d1 + a[1][1] * r.d2};
}

Mat2 identity2() { return mat(1, 0, 0, 1); }

void require_rank2_pair(long b, long c) {
  if (b < 0 || c < 0 || (b == 0) != (c == 0)) throw std::invalid_argument("b and c must be both zero or both positive");
}

std::optional<std::size_t> coxeter_number(long b, long c) {
  require_rank2_pair(b, c);
  switch (b * c) {
    case 0: return 2;
    case 1: return 3;
    case 2: return 4;
    case 3: return 6;
    default: return std::nullopt;
  }
}

Rank2System Rank2System::make(long b, long c) {
  Rank2System s;
  s.b = b;
  s.c = c;
  s.h = coxeter_number(b, c);
  s.s1 = mat(-1, b, 0, 1);
  s.s2 = mat(1, 0, c, -1);
  s.s1_co = mat(-1, c, 0, 1);
  s.s2_co = mat(1, 0, b, -1);
  return s;
}

Mat2 weyl_word_action(const Rank2System& sys, int which, std::size_t m, bool coroot) {
  if (which != 1 && which != 2) throw std::invalid_argument("which must be 1 or 2");
  const Mat2& a = coroot ? sys.s1_co : sys.s1;
  const Mat2& b = coroot ? sys.s2_co : sys.s2;
  Mat2 w = identity2();
  for (std::size_t step = 0; step < m; ++step) w = w * (((which == 1) == (step % 2 == 0)) ? a : b);
  return w;
}

Root simple_root(int i) {
  if (i == 1) return {1, 0};
  if (i == 2) return {0, 1};
  throw std::invalid_argument("simple root index must be 1 or 2");
}

DenominatorSequence denominator_sequence(long b, long c, long lo, long hi) {
  require_rank2_pair(b, c);
  if (lo > 1 || hi < 2) throw std::invalid_argument("range must contain 1 and 2");
  const auto clamp = [](const Root& r) { return Root{std::max(r.d1, Integer(0)), std::max(r.d2, Integer(0))}; };
  const auto factor = [&](long m) { return Integer(m % 2 != 0 ? b : c); };
  std::deque<Root> seq{Integer(-1) * simple_root(1), Integer(-1) * simple_root(2)};
  // delta(m+1) = f(m) [delta(m)]_+ - delta(m-1), run in both directions.
  for (long m = 2; m < hi; ++m) seq.push_back(factor(m) * clamp(seq[seq.size() - 1]) - seq[seq.size() - 2]);
  for (long m = 1; m > lo; --m) seq.push_front(factor(m) * clamp(seq[0]) - seq[1]);
  return {lo, std::vector<Root>(seq.begin(), seq.end())};
}

Root weyl_denominator(const Rank2System& sys, long m) {
  if (sys.h) {
    const long period = static_cast<long>(*sys.h) + 2;
    m = ((m - 1) % period + period) % period + 1;
  }
  if (m == 1 || m == 2) return Integer(-1) * simple_root(static_cast<int>(m));
  if (m >= 3) return weyl_word_action(sys, 1, static_cast<std::size_t>(m - 3)) * simple_root(parity_index(m - 2));
  const auto k = static_cast<std::size_t>(-m);
  return weyl_word_action(sys, 2, k) * simple_root(parity_index(-m + 2));
}

std::vector<Root> positive_roots(const Rank2System& sys, const Integer& max_height) {
  if (!sys.finite() && max_height <= 0) throw std::invalid_argument("infinite type needs a height bound");
  const auto fits = [&](const Root& r) { return sys.finite() || abs(r.d1) + abs(r.d2) <= max_height; };
  std::vector<Root> orbit{simple_root(1), simple_root(2)};
  std::set<std::pair<Integer, Integer>> seen{{1, 0}, {0, 1}};
  for (std::size_t i = 0; i < orbit.size(); ++i) {
    for (const Mat2* s : {&sys.s1, &sys.s2}) {
      const Root r = *s * orbit[i];
      if (!fits(r) || !seen.insert({r.d1, r.d2}).second) continue;
      orbit.push_back(r);
    }
  }
  std::vector<Root> out;
  std::copy_if(orbit.begin(), orbit.end(), std::back_inserter(out), [](const Root& r) { return r.positive(); });
  std::sort(out.begin(), out.end(), root_less);
  return out;
}

ExchangeMatrix rank2_initial_matrix(long b, long c) {
  require_rank2_pair(b, c);
  return ExchangeMatrix::square({{0, -b}, {c, 0}});
}

std::map<long, LaurentPoly> rank2_cluster_variables(long b, long c, long lo, long hi) {
  if (lo > 1 || hi < 2) throw std::invalid_argument("range must contain 1 and 2");
  const Seed start = initial_seed(rank2_initial_matrix(b, c));
  std::map<long, LaurentPoly> out{{1, start.cluster[0]}, {2, start.cluster[1]}};
  Seed s = start;
  for (long m = 3; m <= hi; ++m) {
    s = mutate_seed(s, slot(m));
    out[m] = s.cluster[slot(m)];
  }
  s = start;
  for (long m = 0; m >= lo; --m) {
    s = mutate_seed(s, slot(m));
    out[m] = s.cluster[slot(m)];
  }
  return out;
}

DenominatorReport verify_denominator_theorem(long b, long c, long lo, long hi) {
  const auto sys = Rank2System::make(b, c);
  const auto rec = denominator_sequence(b, c, lo, hi);
  const auto engine = rank2_cluster_variables(b, c, lo, hi);
  DenominatorReport r{b, c, sys.h, {}, 0, true, true};
  for (long m = lo; m <= hi; ++m) {
    DenominatorRow row{m, rec.at(m), weyl_denominator(sys, m), root_of(denominator_vector(engine.at(m), 2))};
    if (!row.agree()) ++r.mismatches;
    r.rows.push_back(std::move(row));
  }
  if (sys.h) {
    const long period = static_cast<long>(*sys.h) + 2;
    for (long m = lo; m + period <= hi; ++m) {
      const auto& a = r.rows[static_cast<std::size_t>(m - lo)];
      const auto& z = r.rows[static_cast<std::size_t>(m + period - lo)];
      if (a.engine != z.engine || a.recurrence != z.recurrence) r.periodic = false;
    }
  } else {
    std::set<std::pair<Integer, Integer>> seen;
    for (const auto& row : r.rows)
      if (!seen.insert({row.engine.d1, row.engine.d2}).second) r.distinct = false;
  }
  return r;
}

nlohmann::json to_json(const DenominatorReport& r) {
  nlohmann::json rows = nlohmann::json::array();
  const auto pair = [](const Root& x) { return nlohmann::json{x.d1.get_str(), x.d2.get_str()}; };
  for (const auto& row : r.rows)
    rows.push_back({{"m", row.m}, {"recurrence", pair(row.recurrence)}, {"weyl", pair(row.weyl)}, {"engine", pair(row.engine)},
                    {"agree", row.agree()}});
  nlohmann::json out = {{"b", r.b}, {"c", r.c}, {"h", r.h ? nlohmann::json(*r.h) : nlohmann::json("infinite")},
                        {"rows", std::move(rows)}, {"mismatches", r.mismatches}, {"ok", r.ok()}};
  if (r.h)
    out["periodic"] = r.periodic;
  else
    out["distinct"] = r.distinct;
  return out;
}

std::string to_table(const DenominatorReport& r) {
  std::ostringstream out;
  out << "m\trecurrence\tweyl\tengine\n";
  for (const auto& row : r.rows)
    out << row.m << "\t" << to_string(row.recurrence) << "\t" << to_string(row.weyl) << "\t" << to_string(row.engine)
        << (row.agree() ? "" : "\tMISMATCH") << "\n";
  return out.str();
}

std::vector<SemifieldElem> u_sequence(const SemifieldElem& u1, const SemifieldElem& u2, long b, long c,
                                      std::size_t length) {
  require_rank2_pair(b, c);
  std::vector<SemifieldElem> u{u1, u2};
  const auto one = one_like(u1);
  for (std::size_t m = 2; u.size() < length; ++m) {
    const Integer e(m % 2 != 0 ? c : b);
    u.push_back(div(pow(oplus(one, u[m - 1]), e), u[m - 2]));
  }
  u.resize(std::min(u.size(), length));
  return u;
}

PeriodicityReport verify_periodicity(long b, long c, std::size_t trials, std::uint64_t rng_seed, std::size_t window) {
  PeriodicityReport r{b, c, coxeter_number(b, c), trials, 0, false, std::nullopt, window};
  Rng rng(rng_seed);
  for (std::size_t t = 0; t < trials; ++t) {
    const SemifieldElem u1 = PositiveRational(random_positive(rng));
    const SemifieldElem u2 = PositiveRational(random_positive(rng));
    const auto u = u_sequence(u1, u2, b, c, window + 2);
    if (t == 0) {
      for (std::size_t p = 1; p <= window && !r.period; ++p)
        if (u[p] == u1 && u[p + 1] == u2) r.period = p;
    }
    if (r.h && !(u.at(*r.h + 2) == u1 && u.at(*r.h + 3) == u2)) ++r.failures;
  }
  if (r.h) {
    const long h = static_cast<long>(*r.h);
    const auto y = rank2_cluster_variables(b, c, 1, h + 4);
    r.engine_periodic = y.at(h + 3) == y.at(1) && y.at(h + 4) == y.at(2);
    // Same check with the geometric coefficients of rank2_geometric_matrix.
    Seed s = initial_seed(rank2_geometric_matrix(b, c));
    const Seed start = s;
    for (long m = 3; m <= h + 4; ++m) s = mutate_seed(s, slot(m));
    r.engine_periodic = r.engine_periodic && s.cluster[slot(h + 3)] == start.cluster[0] &&
                        s.cluster[slot(h + 4)] == start.cluster[1];
  }
  return r;
}

std::vector<Integer> r_from_q(long b, long c, long k) {
  const std::size_t h = require_finite(b, c);
  const auto sys = Rank2System::make(b, c);
  const int i = parity_index(k + 1);
  std::vector<Integer> out;
  for (std::size_t m = 0; m + 2 <= h; ++m) {
    const Root v = weyl_word_action(sys, i, m, true) * simple_root(parity_index(i + static_cast<long>(m)));
    out.push_back(i == 1 ? v.d1 : v.d2);
  }
  return out;
}

Tropical tropical_q(long b, long c, long m) {
  const long period = static_cast<long>(require_finite(b, c)) + 2;
  Tropical t;
  t.exponents.assign(static_cast<std::size_t>(period), Integer(0));
  t.exponents[static_cast<std::size_t>(((m - 1) % period + period) % period)] = 1;
  return t;
}

Tropical tropical_r(long b, long c, long k) {
  const auto e = r_from_q(b, c, k);
  Tropical t = std::get<Tropical>(one_like(tropical_q(b, c, 1)));
  for (std::size_t m = 0; m < e.size(); ++m) {
    const auto q = tropical_q(b, c, k + static_cast<long>(m) + 2);
    for (std::size_t g = 0; g < q.exponents.size(); ++g) t.exponents[g] += e[m] * q.exponents[g];
  }
  return t;
}

CoefficientIdentityReport verify_coefficient_identities(long b, long c, std::size_t trials, std::uint64_t rng_seed) {
  const long h = static_cast<long>(require_finite(b, c));
  CoefficientIdentityReport r{b, c, 0, 0, 0, 0};
  const auto chain_exponent = [&](long m) { return Integer(m % 2 != 0 ? c : b); };

  Rng rng(rng_seed);
  const long n = 3 * (h + 2);
  for (std::size_t t = 0; t < trials; ++t) {
    const auto u = u_sequence(PositiveRational(random_positive(rng)), PositiveRational(random_positive(rng)), b, c,
                              static_cast<std::size_t>(n));
    std::vector<Rational> q(static_cast<std::size_t>(n + 1));
    std::vector<Rational> rr(static_cast<std::size_t>(n + 1));
    for (long m = 1; m <= n; ++m) {
      const Rational x = std::get<PositiveRational>(u[static_cast<std::size_t>(m - 1)]).value();
      q[static_cast<std::size_t>(m)] = x / (1 + x);
      rr[static_cast<std::size_t>(m)] = 1 / (1 + x);
    }
    for (long k = 1; k + h <= n; ++k) {
      const auto e = r_from_q(b, c, k);
      Rational prod = 1;
      for (std::size_t m = 0; m < e.size(); ++m) {
        const Rational& base = q[static_cast<std::size_t>(k + static_cast<long>(m) + 2)];
        for (Integer i = 0; i < e[m]; ++i) prod *= base;
      }
      ++r.rational_checks;
      if (prod != rr[static_cast<std::size_t>(k)]) ++r.rational_failures;
    }
    for (long m = 2; m < n; ++m) {
      Rational lhs = q[static_cast<std::size_t>(m - 1)] * q[static_cast<std::size_t>(m + 1)];
      for (Integer i = 0; i < chain_exponent(m); ++i) lhs *= rr[static_cast<std::size_t>(m)];
      ++r.rational_checks;
      if (lhs != rr[static_cast<std::size_t>(m - 1)] * rr[static_cast<std::size_t>(m + 1)]) ++r.rational_failures;
    }
  }

  for (long m = 1; m <= h + 2; ++m) {
    const SemifieldElem qm = tropical_q(b, c, m);
    const SemifieldElem rm = tropical_r(b, c, m);
    const SemifieldElem lhs = mul(mul(tropical_q(b, c, m - 1), tropical_q(b, c, m + 1)), pow(rm, chain_exponent(m)));
    const SemifieldElem rhs = mul(SemifieldElem(tropical_r(b, c, m - 1)), SemifieldElem(tropical_r(b, c, m + 1)));
    r.tropical_checks += 2;
    if (lhs != rhs) ++r.tropical_failures;
    if (!is_one(oplus(qm, rm))) ++r.tropical_failures;
  }
  return r;
}

ExchangeMatrix rank2_geometric_matrix(long b, long c) {
  const long period = static_cast<long>(require_finite(b, c)) + 2;
  const SemifieldElem u2 = div(SemifieldElem(tropical_q(b, c, 2)), SemifieldElem(tropical_r(b, c, 2)));
  const SemifieldElem inv_u1 = div(SemifieldElem(tropical_r(b, c, 1)), SemifieldElem(tropical_q(b, c, 1)));
  std::vector<std::vector<long>> rows{{0, -b}, {c, 0}};
  for (long g = 0; g < period; ++g) {
    const auto i = static_cast<std::size_t>(g);
    rows.push_back({to_int64(std::get<Tropical>(u2).exponents[i]), to_int64(std::get<Tropical>(inv_u1).exponents[i])});
  }
  return ExchangeMatrix::from_rows(static_cast<std::size_t>(period), rows);
}

}  // namespace clusterlab
