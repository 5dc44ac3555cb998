// Runs the eleven acceptance criteria and prints one PASS/FAIL line each.
#include <algorithm>
#include <chrono>
#include <cstdio>
#include <functional>
#include <map>
#include <set>
#include <sstream>
#include <string>
#include <thread>

#include "clusterlab/catalog.hpp"
#include "clusterlab/counterexamples.hpp"
#include "clusterlab/explorer.hpp"
#include "clusterlab/random.hpp"
#include "clusterlab/rank2.hpp"
#include "clusterlab/seed.hpp"

using namespace clusterlab;

namespace {

struct Outcome {
  bool pass = false;
  std::string detail;
};

unsigned worker_count() { return std::max(1u, std::thread::hardware_concurrency()); }

// Connected, complete, and every vertex of degree 2.
bool is_cycle(const ExchangeGraph& g, std::size_t length) {
  if (g.vertices.size() != length || g.edges.size() != length || !g.complete) return false;
  std::vector<std::vector<std::size_t>> adj(length);
  for (const auto& e : g.edges) {
    adj[e.source].push_back(e.target);
    adj[e.target].push_back(e.source);
  }
  for (const auto& a : adj)
    if (a.size() != 2) return false;
  std::vector<bool> seen(length);
  std::vector<std::size_t> stack{0};
  std::size_t reached = 0;
  while (!stack.empty()) {
    const auto v = stack.back();
    stack.pop_back();
    if (seen[v]) continue;
    seen[v] = true;
    ++reached;
    for (auto u : adj[v]) stack.push_back(u);
  }
  return reached == length;
}

Outcome pentagon() {
  const auto g = explore(ExchangeMatrix::square({{0, 1}, {-1, 0}}), {100, 64, 1});
  const auto vars = g.cluster_variables();
  const bool pass = g.vertices.size() == 5 && g.edges.size() == 5 && g.complete && g.regular() && vars.size() == 5;
  return {pass, std::to_string(g.vertices.size()) + " vertices, " + std::to_string(g.edges.size()) + " edges, " +
                    std::to_string(vars.size()) + " cluster variables"};
}

Outcome rank2_cycles() {
  const std::vector<std::tuple<long, long, std::size_t>> table{{0, 0, 2}, {1, 1, 3}, {1, 2, 4}, {2, 1, 4}, {1, 3, 6}, {3, 1, 6}};
  bool pass = true;
  std::string detail;
  for (const auto& [b, c, h] : table) {
    const auto t0 = std::chrono::steady_clock::now();
    const auto g = explore(rank2_matrix(b, c), {100, 64, 1});
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    const bool ok = is_cycle(g, h + 2) && secs < 1.0;
    pass = pass && ok;
    if (!detail.empty()) detail += ", ";
    detail += "(" + std::to_string(b) + "," + std::to_string(c) + ") cycle of " + std::to_string(g.vertices.size()) + (ok ? "" : " FAILED");
  }
  return {pass, detail};
}

Outcome denominators() {
  bool pass = true;
  std::string detail;
  for (const auto& [b, c] : std::vector<std::pair<long, long>>{{0, 0}, {1, 1}, {1, 2}, {2, 1}, {1, 3}, {3, 1}}) {
    const auto sys = Rank2System::make(b, c);
    const long h = static_cast<long>(*sys.h);
    const auto r = verify_denominator_theorem(b, c, 1, h + 2);
    std::vector<Root> engine;
    for (const auto& row : r.rows)
      if (row.m >= 3) engine.push_back(row.engine);
    auto roots = positive_roots(sys);
    auto key = [](const Root& a, const Root& x) { return a.d1 != x.d1 ? a.d1 < x.d1 : a.d2 < x.d2; };
    std::sort(engine.begin(), engine.end(), key);
    std::sort(roots.begin(), roots.end(), key);
    const bool ok = r.mismatches == 0 && engine == roots && r.rows[0].engine == Root{-1, 0} && r.rows[1].engine == Root{0, -1};
    pass = pass && ok;
    if (!ok) detail += "finite (" + std::to_string(b) + "," + std::to_string(c) + ") failed; ";
  }
  for (const auto& [b, c] : std::vector<std::pair<long, long>>{{2, 2}, {1, 4}}) {
    const auto r = verify_denominator_theorem(b, c, 1, 20);
    bool ok = r.mismatches == 0 && r.rows.size() == 20;
    for (std::size_t i = 0; i < r.rows.size(); ++i)
      for (std::size_t j = i + 1; j < r.rows.size(); ++j) ok = ok && !(r.rows[i].engine == r.rows[j].engine);
    pass = pass && ok;
    if (!ok) detail += "infinite (" + std::to_string(b) + "," + std::to_string(c) + ") failed; ";
  }
  return {pass, pass ? "six finite censuses equal the positive roots; 20 distinct denominators for (2,2), (1,4)" : detail};
}

FuzzReport fuzz_corpus(const std::string& reproducer_dir) {
  FuzzConfig config;
  config.trials = 200;
  config.max_rank = 4;
  config.bound = 3;
  config.max_frozen = 2;
  config.max_length = 10;
  config.rng_seed = 1;
  config.threads = worker_count();
  config.work_budget = 10'000'000;
  config.reproducer_dir = reproducer_dir;
  return laurent_fuzz(config);
}

Outcome laurent(const FuzzReport& r) {
  const bool pass = r.ok() && r.complete();
  std::ostringstream d;
  d << r.trials.size() << " trials, " << r.steps << " steps, " << r.laurent_violations << " not divisible, "
    << r.exchange_mismatches << " exchange mismatches, " << r.exhausted << " trials exhausted the work budget";
  return {pass, d.str()};
}

Outcome positivity(const FuzzReport& r) {
  std::ostringstream d;
  d << r.expansions << " expansions checked, " << r.non_positive << " with a negative coefficient, "
    << r.reproducers.size() << " reproducers written";
  if (r.exhausted) d << " (" << r.exhausted << " exhausted trials checked up to their last completed step)";
  return {r.non_positive == r.reproducers.size(), d.str()};
}

Outcome brick_wall() {
  const auto report = brick_wall_regions({10000, 5, 1});
  const std::map<std::string, DenominatorVector> figure{
      {"y-4", {2, 2, 3}}, {"y-3", {1, 2, 2}}, {"y-2", {1, 1, 2}}, {"y-1", {0, 1, 1}},  {"y0", {0, 0, 1}},
      {"y1", {-1, 0, 0}}, {"y2", {0, -1, 0}}, {"y3", {0, 0, -1}}, {"y4", {1, 0, 0}},  {"y5", {1, 1, 0}},
      {"y6", {2, 1, 1}},  {"y7", {2, 2, 1}},  {"y8", {3, 2, 2}},  {"w", {0, 1, 0}},   {"z", {1, 0, 1}}};
  std::size_t matched = 0;
  for (const auto& [label, d] : figure) {
    const auto& r = report.at(label);
    if (r.in_graph && r.denominator == d) ++matched;
  }
  auto y = [&](long m) { return report.at("y" + std::to_string(m)).variable; };
  const auto w = report.at("w").variable;
  const auto z = report.at("z").variable;
  const auto one = LaurentPoly::constant(3, 1);
  std::size_t checks = 0, failures = 0;
  auto check = [&](const LaurentPoly& lhs, const LaurentPoly& rhs) {
    ++checks;
    if (!(lhs == rhs)) ++failures;
  };
  for (long m = -4; m <= 8; ++m) {
    const bool even = m % 2 == 0;
    if (m + 3 <= 8) check(y(m) * y(m + 3), y(m + 1) * y(m + 2) + one);
    if (even && m - 1 >= -4 && m + 1 <= 8) check(w * y(m), y(m - 1) + y(m + 1));
    if (!even && m + 4 <= 8) check(y(m) * y(m + 4), y(m + 2) * y(m + 2) + w);
    if (even && m + 4 <= 8) check(y(m) * y(m + 4), y(m + 2) * y(m + 2) + z);
    if (!even && m - 1 >= -4 && m + 1 <= 8) check(y(m) * z, y(m - 1) + y(m + 1));
  }
  std::ostringstream d;
  d << matched << "/15 regions match, " << checks - failures << "/" << checks << " relations hold, graph "
    << report.graph.vertices.size() << " vertices";
  return {matched == 15 && failures == 0 && report.graph.anomalies.empty(), d.str()};
}

Outcome counterexample_family() {
  bool pass = true;
  std::ostringstream d;
  for (const auto& [a, b, g] : std::vector<std::tuple<long, long, long>>{{1, 1, 3}, {1, 3, 1}, {2, 2, 1}}) {
    CyclicalFuzzConfig config;
    config.alpha = a;
    config.beta = b;
    config.gamma = g;
    config.trials = 500;
    config.depth = 12;
    config.threads = worker_count();
    const auto r = fuzz_cyclical(config);
    pass = pass && r.ok() && r.transition_checks > 0;
    if (d.tellp() > 0) d << "; ";
    d << "(" << a << "," << b << "," << g << ") " << r.steps << " steps, " << r.transition_checks << " transitions, "
      << r.violations() << " violations";
  }
  return {pass, d.str()};
}

Outcome periodicity() {
  bool pass = true;
  std::size_t points = 0, chains = 0;
  for (const auto& [b, c] : std::vector<std::pair<long, long>>{{0, 0}, {1, 1}, {1, 2}, {2, 1}, {1, 3}, {3, 1}}) {
    const auto p = verify_periodicity(b, c, 100, 1);
    const auto q = verify_coefficient_identities(b, c, 100, 1);
    pass = pass && p.ok() && q.ok() && q.tropical_checks > 0;
    points += p.trials;
    chains += q.tropical_checks;
  }
  using V = std::vector<Integer>;
  const bool literals = r_from_q(0, 0, 1) == V{1} && r_from_q(1, 1, 1) == V{1, 1} && r_from_q(1, 2, 1) == V{1, 1, 1} &&
                        r_from_q(1, 2, 2) == V{1, 2, 1} && r_from_q(1, 3, 1) == V{1, 1, 2, 1, 1} &&
                        r_from_q(1, 3, 2) == V{1, 3, 2, 3, 1};
  return {pass && literals, std::to_string(points) + " rational points periodic, r_k literals " +
                                (literals ? "match" : "DIFFER") + ", " + std::to_string(chains) + " tropical checks"};
}

// Frozen-row mutation computed entrywise, independently of the engine.
ExchangeMatrix mutate_oracle(const ExchangeMatrix& b, std::size_t k) {
  IntMatrix m(b.rows(), b.rank());
  for (std::size_t i = 0; i < b.rows(); ++i)
    for (std::size_t j = 0; j < b.rank(); ++j) {
      if (i == k || j == k) {
        m(i, j) = -b(i, j);
      } else {
        m(i, j) = b(i, j) + (abs(Integer(b(i, k))) * b(k, j) + b(i, k) * abs(Integer(b(k, j)))) / 2;
      }
    }
  return ExchangeMatrix(b.rank(), b.frozen(), m);
}

Outcome tropical_rows() {
  Rng rng(2024);
  std::size_t agree = 0;
  for (int t = 0; t < 100; ++t) {
    const std::size_t n = 1 + rng.below(4);
    const std::size_t f = 1 + rng.below(3);
    const auto b = random_skew_symmetrizable(rng, n, 3, f);
    const std::size_t k = rng.below(n);
    const auto oracle = mutate_oracle(b, k);
    const auto via_semifield = mutate_coefficients(coefficients_from_matrix(b), b, k);
    if (mutate(b, k) == oracle && coefficients_from_matrix(oracle) == via_semifield) ++agree;
  }
  return {agree == 100, std::to_string(agree) + "/100 pairs agree"};
}

Outcome alternating_cycles() {
  Rng rng(7);
  std::size_t done = 0, verified = 0, anomalies = 0, attempts = 0;
  while (done < 20 && attempts < 10000) {
    ++attempts;
    const auto b = random_skew_symmetrizable(rng, 3, 3, rng.below(3));
    Seed s = initial_seed(b);
    const std::size_t steps = rng.below(3);
    for (std::size_t t = 0; t < steps; ++t) s = mutate_seed(s, rng.below(3));
    const std::size_t i = rng.below(3);
    const std::size_t j = (i + 1 + rng.below(2)) % 3;
    if (abs(Integer(s.matrix(i, j) * s.matrix(j, i))) > 3) continue;
    ++done;
    const auto c = alternating_cycle(s, i, j);
    const auto k1 = canonical_key(s);
    const auto k2 = canonical_key(c.end);
    if (c.equivalence.anomaly) ++anomalies;
    if (c.equivalence.equivalent && k1.same_cluster(k2) && k1.same_exchange_data(k2)) ++verified;
  }
  return {done == 20 && verified == 20 && anomalies == 0,
          std::to_string(verified) + "/" + std::to_string(done) + " cycles close, " + std::to_string(anomalies) + " anomalies"};
}

Rational minor(const std::vector<std::pair<long, long>>& pts, long k, long l) {
  auto idx = [](long m) { return static_cast<std::size_t>(((m - 1) % 5 + 5) % 5); };
  std::size_t a = idx(k), b = idx(l);
  if (a > b) std::swap(a, b);
  return Rational(pts[a].first * pts[b].second - pts[b].first * pts[a].second);
}

Outcome grassmannian() {
  Rng rng(25);
  std::size_t relations = 0, failures = 0;
  bool periodic = true;
  for (int trial = 0; trial < 20; ++trial) {
    // Five points in convex position ordered by angle, so every minor [i, j], i < j, is positive.
    std::vector<std::pair<long, long>> pts;
    while (true) {
      pts.clear();
      for (int i = 0; i < 5; ++i) pts.emplace_back(rng.uniform(1, 30), rng.uniform(-30, 30));
      std::sort(pts.begin(), pts.end(), [](auto a, auto b) { return a.second * b.first < b.second * a.first; });
      bool strict = true;
      for (int i = 0; i + 1 < 5; ++i) strict = strict && pts[i].second * pts[i + 1].first < pts[i + 1].second * pts[i].first;
      if (strict) break;
    }
    std::vector<Rational> point{minor(pts, 1, 3), minor(pts, 3, 5)};
    for (long m = 1; m <= 5; ++m) point.push_back(minor(pts, 2 * m - 2, 2 * m + 2));
    Seed s = initial_seed(grassmannian_2_5_matrix(), {"q1", "q2", "q3", "q4", "q5"});
    const Seed start = s;
    for (long m = 3; m <= 12; ++m) {
      const std::size_t k = static_cast<std::size_t>(m - 3) % 2;
      const auto rel = exchange_relation(s, k);
      ++relations;
      const Rational lhs = evaluate(rel.lhs_old, point) * evaluate(rel.lhs_new, point);
      const Rational rhs = evaluate(expand(s, rel.m1), point) + evaluate(expand(s, rel.m2), point);
      s = mutate_seed(s, k);
      if (lhs != rhs || evaluate(s.cluster[k], point) != minor(pts, 2 * m - 1, 2 * m + 1)) ++failures;
    }
    periodic = periodic && s.cluster == start.cluster;
  }
  return {failures == 0 && periodic,
          std::to_string(relations - failures) + "/" + std::to_string(relations) + " relations match Plucker values, " +
              (periodic ? "y(m+5) = y(m)" : "not periodic")};
}

}  // namespace

int main(int argc, char** argv) {
  const std::string reproducers = argc > 1 ? argv[1] : "positivity-reproducers";
  struct Criterion {
    int id;
    const char* name;
    double limit;
    std::function<Outcome()> run;
  };
  FuzzReport corpus;
  double corpus_secs = 0;
  const std::vector<Criterion> criteria{
      {1, "pentagon", 1, pentagon},
      {2, "rank-2 finite law", 6, rank2_cycles},
      {3, "denominator theorem", 5, denominators},
      {4, "Laurent fuzz", 120,
       [&] {
         const auto t0 = std::chrono::steady_clock::now();
         corpus = fuzz_corpus(reproducers);
         corpus_secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
         return laurent(corpus);
       }},
      {5, "positivity evidence", 120, [&] { return positivity(corpus); }},
      {6, "brick wall", 10, brick_wall},
      {7, "counterexample family", 30, counterexample_family},
      {8, "periodicity identities", 5, periodicity},
      {9, "tropical vs frozen rows", 1, tropical_rows},
      {10, "alternating cycles", 30, alternating_cycles},
      {11, "Gr(2,5) oracle", 5, grassmannian},
  };
  int failed = 0;
  for (const auto& c : criteria) {
    const auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (c.id == 5) secs += corpus_secs;
    const bool pass = o.pass && secs < c.limit;
    if (!pass) ++failed;
    std::printf("%s %2d %-26s %8.3f s (limit %g s)  %s\n", pass ? "PASS" : "FAIL", c.id, c.name, secs, c.limit,
                o.detail.c_str());
    std::fflush(stdout);
  }
  std::printf("%d of %zu criteria passed\n", static_cast<int>(criteria.size()) - failed, criteria.size());
  return failed == 0 ? 0 : 1;
}
