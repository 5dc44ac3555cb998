#include <doctest.h>

#include <algorithm>
#include <set>

#include "clusterlab/catalog.hpp"
#include "clusterlab/explorer.hpp"
#include "clusterlab/random.hpp"

using namespace clusterlab;

namespace {

ExploreLimits limits(std::size_t vertices, std::size_t depth = 64, unsigned threads = 1) {
  return {vertices, depth, threads};
}

// A connected graph whose vertices all have degree 2 is a cycle.
bool is_cycle(const ExchangeGraph& g, std::size_t length) {
  if (g.vertices.size() != length || g.edges.size() != length) return false;
  std::vector<std::size_t> degree(length);
  for (const auto& e : g.edges) {
    ++degree[e.source];
    ++degree[e.target];
  }
  if (!std::all_of(degree.begin(), degree.end(), [](std::size_t d) { return d == 2; })) return false;
  std::vector<bool> seen(length);
  std::vector<std::size_t> stack{0};
  while (!stack.empty()) {
    const auto v = stack.back();
    stack.pop_back();
    if (seen[v]) continue;
    seen[v] = true;
    for (const auto& e : g.edges) {
      if (e.source == v) stack.push_back(e.target);
      if (e.target == v) stack.push_back(e.source);
    }
  }
  return std::all_of(seen.begin(), seen.end(), [](bool b) { return b; });
}

std::set<std::string> cluster_set(const Seed& s) {
  std::set<std::string> out;
  for (const auto& p : s.cluster) out.insert(to_json(p).dump());
  return out;
}

}  // namespace

TEST_CASE("canonical keys") {
  const auto s = initial_seed(rank2_matrix(1, 1));
  const auto self = seeds_equivalent(s, s);
  CHECK(self.equivalent);
  CHECK_FALSE(self.anomaly);
  CHECK(self.sigma == std::vector<std::size_t>{0, 1});

  const auto round = apply_sequence(s, std::vector<std::size_t>{0, 1, 0, 1, 0});
  CHECK(canonical_key(round) == canonical_key(s));
  const auto e = seeds_equivalent(s, round);
  CHECK(e.equivalent);
  CHECK_FALSE(e.anomaly);
  CHECK(e.sigma == std::vector<std::size_t>{1, 0});

  const auto a = mutate_seed(s, 0);
  const auto b = mutate_seed(s, 1);
  CHECK(cluster_set(a) != cluster_set(b));
  CHECK_FALSE(canonical_key(a) == canonical_key(b));
  CHECK_FALSE(seeds_equivalent(a, b).equivalent);
}

TEST_CASE("infinite rank-2 seeds are pairwise inequivalent") {
  const auto s = initial_seed(rank2_matrix(2, 2));
  std::vector<Seed> path{s};
  for (std::size_t m = 0; m < 10; ++m) path.push_back(mutate_seed(path.back(), m % 2));
  for (std::size_t a = 0; a < path.size(); ++a)
    for (std::size_t b = a + 1; b < path.size(); ++b) CHECK_FALSE(seeds_equivalent(path[a], path[b]).equivalent);
}

TEST_CASE("pentagon") {
  const auto g = explore(ExchangeMatrix::square({{0, 1}, {-1, 0}}), limits(100));
  CHECK(g.complete);
  CHECK(g.regular());
  CHECK(is_cycle(g, 5));
  CHECK(g.cluster_variables().size() == 5);
  CHECK(g.anomalies.empty());
  const auto dot = export_dot(g);
  CHECK(dot.rfind("graph exchange_graph {\n", 0) == 0);
  CHECK(std::count(dot.begin(), dot.end(), '\n') == 1 + 5 + 5 + 1);
  CHECK(dot.find("v0 [label=\"(0,-1) (-1,0)\"]") != std::string::npos);
}

TEST_CASE("rank-2 exchange graphs are cycles of length h + 2") {
  const std::vector<std::tuple<long, long, std::size_t>> table{{0, 0, 2}, {1, 1, 3}, {1, 2, 4}, {2, 1, 4}, {1, 3, 6}, {3, 1, 6}};
  for (const auto& [b, c, h] : table) {
    const auto g = explore(rank2_matrix(b, c), limits(100));
    CHECK(g.complete);
    CHECK(is_cycle(g, h + 2));
  }
  for (const auto& [b, c] : std::vector<std::pair<long, long>>{{2, 2}, {1, 4}, {3, 3}}) {
    for (std::size_t depth = 1; depth <= 6; ++depth) {
      const auto g = explore(rank2_matrix(b, c), limits(1000, depth));
      CHECK_FALSE(g.complete);
      CHECK(g.vertices.size() == 2 * depth + 1);
      CHECK(g.boundary_vertices().size() == 2);
    }
  }
}

TEST_CASE("product of two pentagons") {
  const auto a2 = rank2_matrix(1, 1);
  const auto g = explore(direct_product(a2, a2), limits(1000));
  CHECK(g.complete);
  CHECK(g.regular());
  CHECK(g.vertices.size() == 25);
  CHECK(g.edges.size() == 50);
}

TEST_CASE("geometric coefficients keep the pentagon") {
  const auto g = explore(initial_seed(grassmannian_2_5_matrix(), {"q1", "q2", "q3", "q4", "q5"}), limits(100));
  CHECK(g.complete);
  CHECK(is_cycle(g, 5));
  CHECK(g.anomalies.empty());
}

TEST_CASE("truncated exploration") {
  const auto one = explore(rank2_matrix(1, 1), limits(1));
  CHECK_FALSE(one.complete);
  CHECK(one.vertices.size() == 1);
  CHECK(one.edges.empty());
  CHECK(export_dot(one) == "graph exchange_graph {\n  v0 [label=\"(0,-1) (-1,0)\"];\n}\n");

  const auto wall = explore(brick_wall_matrix(), limits(40));
  CHECK_FALSE(wall.complete);
  CHECK(wall.vertices.size() == 40);
  CHECK(wall.regular());
  CHECK_FALSE(wall.boundary_vertices().empty());
  CHECK(wall.anomalies.empty());
  CHECK_THROWS(explore(rank2_matrix(1, 1), limits(0)));
}

TEST_CASE("exploration is independent of the thread count") {
  const auto wall1 = explore(brick_wall_matrix(), limits(30, 64, 1));
  const auto wall3 = explore(brick_wall_matrix(), limits(30, 64, 3));
  CHECK(wall1 == wall3);
  CHECK(export_json(wall1) == export_json(wall3));
  CHECK(export_dot(wall1) == export_dot(wall3));
}

TEST_CASE("graph JSON round trip") {
  for (const auto& g : {explore(rank2_matrix(1, 2), limits(100)), explore(brick_wall_matrix(), limits(12)),
                        explore(initial_seed(grassmannian_2_5_matrix(), {"q1", "q2", "q3", "q4", "q5"}), limits(100))}) {
    const auto j = to_json(g);
    CHECK(j["format"] == "clusterlab-graph-v1");
    CHECK(graph_from_json(nlohmann::json::parse(export_json(g))) == g);
  }
  CHECK_THROWS(graph_from_json(nlohmann::json{{"format", "other"}}));
}

TEST_CASE("alternating paths close in rank 3") {
  Rng rng(71);
  std::size_t tried = 0;
  while (tried < 30) {
    const auto b = random_skew_symmetrizable(rng, 3, 3, rng.below(3));
    const std::size_t i = rng.below(3);
    const std::size_t j = (i + 1 + rng.below(2)) % 3;
    const Integer product = abs(Integer(b(i, j) * b(j, i)));
    if (product > 3) continue;
    ++tried;
    Seed s = initial_seed(b);
    for (int step = 0; step < 2; ++step) s = mutate_seed(s, rng.below(3));
    if (abs(Integer(s.matrix(i, j) * s.matrix(j, i))) > 3) continue;
    const auto c = alternating_cycle(s, i, j);
    CHECK(c.equivalence.equivalent);
    CHECK_FALSE(c.equivalence.anomaly);
    std::vector<std::size_t> expected{0, 1, 2};
    if (c.h == 3) std::swap(expected[i], expected[j]);
    CHECK(c.equivalence.sigma == expected);
  }
  CHECK_THROWS(alternating_cycle(initial_seed(rank2_matrix(2, 2)), 0, 1));
  CHECK(coxeter_number_for_product(4) == 0);
}

TEST_CASE("brick wall regions") {
  const auto r = brick_wall_regions();
  CHECK(r.regions.size() == 15);
  CHECK_FALSE(r.graph.complete);
  for (const auto& w : r.regions) CHECK(w.in_graph);
  CHECK(r.at("y1").denominator == DenominatorVector{-1, 0, 0});
  CHECK(r.at("y4").denominator == DenominatorVector{1, 0, 0});
  CHECK(r.at("y0").denominator == DenominatorVector{0, 0, 1});
  // y1 y4 = y2 y3 + 1 along the median.
  const auto y = [](std::size_t i) { return LaurentPoly::variable(3, i); };
  CHECK(mul(y(0), r.at("y4").variable) == add(mul(y(1), y(2)), LaurentPoly::constant(3, 1)));
  CHECK(mul(r.at("w").variable, y(1)) == add(y(0), y(2)));
  CHECK_THROWS(r.at("y9"));
  const auto table = to_table(r);
  CHECK(table.rfind("region\tdenominator\tin_graph\ny-4\t(2,2,3)\tyes\n", 0) == 0);
}
