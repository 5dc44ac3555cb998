#include "clusterlab/explorer.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>
#include <unordered_map>

#include "clusterlab/catalog.hpp"
#include "parallel.hpp"

namespace clusterlab {

namespace {

std::size_t combine(std::size_t seed, std::size_t h) { return seed ^ (h + 0x9e3779b97f4a7c15ULL + (seed << 6) + (seed >> 2)); }

std::vector<std::size_t> inverse(const std::vector<std::size_t>& sigma) {
  std::vector<std::size_t> inv(sigma.size());
  for (std::size_t r = 0; r < sigma.size(); ++r) inv[sigma[r]] = r;
  return inv;
}

struct Child {
  std::size_t vertex;
  std::size_t k;
  Seed seed;
  CanonicalSeedKey key;
  ExchangeRelationRecord relation;
};

nlohmann::json monomial_json(const ExchangeMonomial& m) { return m.exponents; }

}  // namespace

CanonicalSeedKey canonical_key(const Seed& s) {
  const std::size_t n = s.rank();
  CanonicalSeedKey key{{}, s.matrix, std::nullopt, std::vector<std::size_t>(n), 0};
  std::iota(key.sigma.begin(), key.sigma.end(), 0);
  std::sort(key.sigma.begin(), key.sigma.end(),
            [&](std::size_t a, std::size_t b) { return compare(s.cluster[a], s.cluster[b]) < 0; });
  std::size_t h = n;
  for (std::size_t r = 0; r < n; ++r) {
    key.cluster.push_back(s.cluster[key.sigma[r]]);
    h = combine(h, hash_value(key.cluster.back()));
  }
  key.hash = h;
  key.matrix = permute(s.matrix, key.sigma);
  if (s.coeffs) {
    CoefficientTuple u{s.coeffs->generators, {}};
    for (std::size_t r = 0; r < n; ++r) u.u.push_back(s.coeffs->u[key.sigma[r]]);
    key.coeffs = std::move(u);
  }
  return key;
}

Equivalence seeds_equivalent(const Seed& s1, const Seed& s2) {
  const auto k1 = canonical_key(s1);
  const auto k2 = canonical_key(s2);
  Equivalence e;
  if (s1.rank() != s2.rank() || !k1.same_cluster(k2)) return e;
  e.equivalent = true;
  e.anomaly = !k1.same_exchange_data(k2);
  e.sigma.assign(s1.rank(), 0);
  for (std::size_t r = 0; r < s1.rank(); ++r) e.sigma[k2.sigma[r]] = k1.sigma[r];
  return e;
}

bool GraphVertex::boundary() const {
  return std::any_of(neighbor.begin(), neighbor.end(), [](const auto& x) { return !x.has_value(); });
}

bool operator==(const GraphVertex& a, const GraphVertex& b) {
  return a.key == b.key && a.key.sigma == b.key.sigma && a.seed == b.seed && a.depth == b.depth && a.neighbor == b.neighbor;
}

bool operator==(const ExchangeGraph& a, const ExchangeGraph& b) {
  return a.initial == b.initial && a.coeffs == b.coeffs && a.generators == b.generators && a.vertices == b.vertices &&
         a.edges == b.edges && a.anomalies == b.anomalies && a.complete == b.complete;
}

std::vector<std::size_t> ExchangeGraph::boundary_vertices() const {
  std::vector<std::size_t> out;
  for (std::size_t v = 0; v < vertices.size(); ++v)
    if (vertices[v].boundary()) out.push_back(v);
  return out;
}

bool ExchangeGraph::regular() const {
  const std::size_t n = rank();
  for (std::size_t v = 0; v < vertices.size(); ++v) {
    const auto& nb = vertices[v].neighbor;
    if (nb.size() != n) return false;
    if (vertices[v].boundary()) continue;
    std::vector<std::size_t> targets;
    for (std::size_t l = 0; l < n; ++l) {
      const auto [w, m] = *nb[l];
      if (w == v || w >= vertices.size()) return false;
      const auto& back = vertices[w].neighbor.at(m);
      if (!back || *back != std::pair{v, l}) return false;
      targets.push_back(w);
    }
    std::sort(targets.begin(), targets.end());
    if (std::adjacent_find(targets.begin(), targets.end()) != targets.end()) return false;
  }
  return true;
}

std::vector<LaurentPoly> ExchangeGraph::cluster_variables() const {
  std::vector<LaurentPoly> all;
  for (const auto& v : vertices) all.insert(all.end(), v.key.cluster.begin(), v.key.cluster.end());
  std::sort(all.begin(), all.end(), [](const auto& a, const auto& b) { return compare(a, b) < 0; });
  all.erase(std::unique(all.begin(), all.end()), all.end());
  return all;
}

ExchangeGraph explore(const Seed& initial, const ExploreLimits& limits) {
  if (limits.max_vertices == 0) throw std::invalid_argument("max_vertices must be positive");
  const std::size_t n = initial.rank();
  ExchangeGraph g{initial.matrix, initial.coeffs, initial.generators, {}, {}, {}, false};
  std::unordered_map<std::size_t, std::vector<std::size_t>> index;

  auto add_vertex = [&](Seed seed, CanonicalSeedKey key, std::size_t depth) {
    const std::size_t id = g.vertices.size();
    index[key.hash].push_back(id);
    g.vertices.push_back({std::move(key), std::move(seed), depth, std::vector<std::optional<std::pair<std::size_t, std::size_t>>>(n)});
    return id;
  };
  auto find = [&](const CanonicalSeedKey& key) -> std::optional<std::size_t> {
    auto it = index.find(key.hash);
    if (it == index.end()) return std::nullopt;
    for (std::size_t id : it->second)
      if (g.vertices[id].key.same_cluster(key)) return id;
    return std::nullopt;
  };

  {
    auto key = canonical_key(initial);
    add_vertex(initial, std::move(key), 0);
  }
  std::vector<std::size_t> frontier{0};
  bool truncated = false;
  for (std::size_t depth = 0; !frontier.empty() && !truncated && depth < limits.max_depth; ++depth) {
    std::vector<std::pair<std::size_t, std::size_t>> tasks;
    for (std::size_t v : frontier) {
      const auto inv = inverse(g.vertices[v].key.sigma);
      for (std::size_t k = 0; k < n; ++k)
        if (!g.vertices[v].neighbor[inv[k]]) tasks.emplace_back(v, k);
    }
    std::vector<std::optional<Child>> children(tasks.size());
    detail::parallel_for(tasks.size(), limits.threads, [&](std::size_t t) {
      const auto [v, k] = tasks[t];
      const Seed& from = g.vertices[v].seed;
      Seed child = mutate_seed(from, k);
      auto key = canonical_key(child);
      auto [m1, m2] = exchange_monomials(from, k);
      ExchangeRelationRecord relation{k, from.cluster[k], child.cluster[k], std::move(m1), std::move(m2)};
      children[t] = Child{v, k, std::move(child), std::move(key), std::move(relation)};
    });

    std::vector<std::size_t> next;
    for (auto& c : children) {
      const auto source_label = inverse(g.vertices[c->vertex].key.sigma)[c->k];
      if (g.vertices[c->vertex].neighbor[source_label]) continue;
      auto target = find(c->key);
      if (target) {
        if (!g.vertices[*target].key.same_exchange_data(c->key)) g.anomalies.push_back({*target, c->seed.history});
      } else if (g.vertices.size() >= limits.max_vertices) {
        truncated = true;
        continue;
      } else {
        target = add_vertex(c->seed, c->key, depth + 1);
        next.push_back(*target);
      }
      const auto target_label = inverse(c->key.sigma)[c->k];
      g.vertices[c->vertex].neighbor[source_label] = std::pair{*target, target_label};
      g.vertices[*target].neighbor[target_label] = std::pair{c->vertex, source_label};
      g.edges.push_back({c->vertex, *target, source_label, target_label, std::move(c->relation)});
    }
    frontier = std::move(next);
  }
  g.complete = g.boundary_vertices().empty();
  if (g.complete && !g.regular()) throw RegularityViolation("complete exchange graph is not n-regular");
  return g;
}

ExchangeGraph explore(const ExchangeMatrix& b, const ExploreLimits& limits) { return explore(initial_seed(b), limits); }

std::string export_dot(const ExchangeGraph& g) {
  std::ostringstream out;
  out << "graph exchange_graph {\n";
  for (std::size_t v = 0; v < g.vertices.size(); ++v) {
    out << "  v" << v << " [label=\"";
    const auto& cluster = g.vertices[v].key.cluster;
    for (std::size_t r = 0; r < cluster.size(); ++r) {
      const auto d = denominator_vector(cluster[r], g.rank());
      out << (r ? " " : "") << "(";
      for (std::size_t i = 0; i < d.size(); ++i) out << (i ? "," : "") << d[i];
      out << ")";
    }
    out << "\"];\n";
  }
  for (const auto& e : g.edges)
    out << "  v" << e.source << " -- v" << e.target << " [label=\"" << e.source_label + 1 << "/" << e.target_label + 1
        << "\"];\n";
  out << "}\n";
  return out.str();
}

nlohmann::json to_json(const ExchangeRelationRecord& r) {
  return {{"k", r.k},
          {"lhs_old", to_json(r.lhs_old)},
          {"lhs_new", to_json(r.lhs_new)},
          {"m1", monomial_json(r.m1)},
          {"m2", monomial_json(r.m2)}};
}

ExchangeRelationRecord relation_from_json(const nlohmann::json& j, std::size_t arity) {
  return {j.at("k").get<std::size_t>(), laurent_from_json(j.at("lhs_old"), arity),
          laurent_from_json(j.at("lhs_new"), arity), {j.at("m1").get<std::vector<Exponent>>()},
          {j.at("m2").get<std::vector<Exponent>>()}};
}

nlohmann::json to_json(const ExchangeGraph& g) {
  nlohmann::json vertices = nlohmann::json::array();
  for (std::size_t v = 0; v < g.vertices.size(); ++v) {
    const auto& x = g.vertices[v];
    nlohmann::json neighbors = nlohmann::json::array();
    for (const auto& nb : x.neighbor) neighbors.push_back(nb ? nlohmann::json{nb->first, nb->second} : nlohmann::json());
    nlohmann::json cluster = nlohmann::json::array();
    for (const auto& p : x.key.cluster) cluster.push_back(to_json(p));
    vertices.push_back({{"id", v},
                        {"depth", x.depth},
                        {"boundary", x.boundary()},
                        {"sigma", x.key.sigma},
                        {"cluster", std::move(cluster)},
                        {"neighbors", std::move(neighbors)},
                        {"seed", to_json(x.seed)}});
  }
  nlohmann::json edges = nlohmann::json::array();
  for (const auto& e : g.edges)
    edges.push_back({{"source", e.source},
                     {"target", e.target},
                     {"source_label", e.source_label},
                     {"target_label", e.target_label},
                     {"relation", to_json(e.relation)}});
  nlohmann::json anomalies = nlohmann::json::array();
  for (const auto& a : g.anomalies) anomalies.push_back({{"vertex", a.vertex}, {"history", a.history}});
  nlohmann::json out = {{"format", "clusterlab-graph-v1"},
                        {"rank", g.rank()},
                        {"status", g.complete ? "complete" : "truncated"},
                        {"matrix", to_json(g.initial)},
                        {"generators", g.generators},
                        {"vertices", std::move(vertices)},
                        {"edges", std::move(edges)},
                        {"anomalies", std::move(anomalies)}};
  if (g.coeffs) out["coefficients"] = to_json(*g.coeffs);
  return out;
}

std::string export_json(const ExchangeGraph& g) { return to_json(g).dump(2) + "\n"; }

ExchangeGraph graph_from_json(const nlohmann::json& j) {
  if (j.value("format", "") != "clusterlab-graph-v1") throw std::invalid_argument("unsupported graph format");
  ExchangeGraph g{matrix_from_json(j.at("matrix")), std::nullopt, j.at("generators").get<std::vector<std::string>>(),
                  {}, {}, {}, j.at("status") == "complete"};
  if (j.contains("coefficients")) g.coeffs = coefficients_from_json(j.at("coefficients"));
  const std::size_t arity = g.rank() + g.generators.size();
  for (const auto& v : j.at("vertices")) {
    Seed seed = seed_from_json(v.at("seed"));
    auto key = canonical_key(seed);
    GraphVertex x{std::move(key), std::move(seed), v.at("depth").get<std::size_t>(), {}};
    for (const auto& nb : v.at("neighbors")) {
      if (nb.is_null())
        x.neighbor.emplace_back();
      else
        x.neighbor.emplace_back(std::pair{nb.at(0).get<std::size_t>(), nb.at(1).get<std::size_t>()});
    }
    g.vertices.push_back(std::move(x));
  }
  for (const auto& e : j.at("edges"))
    g.edges.push_back({e.at("source").get<std::size_t>(), e.at("target").get<std::size_t>(),
                       e.at("source_label").get<std::size_t>(), e.at("target_label").get<std::size_t>(),
                       relation_from_json(e.at("relation"), arity)});
  for (const auto& a : j.at("anomalies"))
    g.anomalies.push_back({a.at("vertex").get<std::size_t>(), a.at("history").get<std::vector<std::size_t>>()});
  return g;
}

std::size_t coxeter_number_for_product(const Integer& product) {
  if (product == 0) return 2;
  if (product == 1) return 3;
  if (product == 2) return 4;
  if (product == 3) return 6;
  return 0;
}

AlternatingCycle alternating_cycle(const Seed& s, std::size_t i, std::size_t j) {
  if (i == j || i >= s.rank() || j >= s.rank()) throw std::invalid_argument("need two distinct exchangeable indices");
  const Integer product = abs(Integer(s.matrix(i, j) * s.matrix(j, i)));
  const std::size_t h = coxeter_number_for_product(product);
  if (h == 0) throw std::invalid_argument("|b_ij b_ji| exceeds 3");
  Seed end = s;
  for (std::size_t step = 0; step < h + 2; ++step) end = mutate_seed(end, step % 2 == 0 ? i : j);
  auto e = seeds_equivalent(s, end);
  return {h, std::move(end), std::move(e)};
}

const WallRegion& WallReport::at(const std::string& label) const {
  for (const auto& r : regions)
    if (r.label == label) return r;
  throw std::out_of_range("no wall region " + label);
}

WallReport brick_wall_regions(const ExploreLimits& limits) {
  const Seed t0 = initial_seed(brick_wall_matrix());
  WallReport report{explore(t0, limits), {}};
  const auto census = report.graph.cluster_variables();
  auto add = [&](std::string label, std::vector<std::size_t> path, std::size_t slot) {
    const Seed s = apply_sequence(t0, path);
    WallRegion r{std::move(label), std::move(path), slot, s.cluster[slot], {}, false};
    r.denominator = denominator_vector(r.variable, 3);
    r.in_graph = std::binary_search(census.begin(), census.end(), r.variable,
                                    [](const auto& a, const auto& b) { return compare(a, b) < 0; });
    report.regions.push_back(std::move(r));
  };
  // Leftward along the median: slots 3, 2, 1, 3, 2 give y0, y-1, ..., y-4.
  const std::vector<std::size_t> left{2, 1, 0, 2, 1};
  for (std::size_t d = left.size(); d >= 1; --d)
    add("y" + std::to_string(1 - static_cast<long>(d)), {left.begin(), left.begin() + static_cast<long>(d)}, left[d - 1]);
  for (std::size_t i = 0; i < 3; ++i) add("y" + std::to_string(i + 1), {}, i);
  // Rightward: slots 1, 2, 3, 1, 2 give y4..y8.
  const std::vector<std::size_t> right{0, 1, 2, 0, 1};
  for (std::size_t d = 1; d <= right.size(); ++d)
    add("y" + std::to_string(d + 3), {right.begin(), right.begin() + static_cast<long>(d)}, right[d - 1]);
  add("w", {1}, 1);
  add("z", {2, 0}, 0);
  return report;
}

nlohmann::json to_json(const WallReport& r) {
  nlohmann::json regions = nlohmann::json::array();
  for (const auto& w : r.regions) {
    std::vector<std::size_t> path;
    for (auto k : w.path) path.push_back(k + 1);
    regions.push_back({{"region", w.label},
                       {"path", path},
                       {"denominator", w.denominator},
                       {"in_graph", w.in_graph},
                       {"expansion", to_string(w.variable, {"y1", "y2", "y3"})}});
  }
  return {{"vertices", r.graph.vertices.size()},
          {"edges", r.graph.edges.size()},
          {"complete", r.graph.complete},
          {"regions", regions}};
}

std::string to_table(const WallReport& r) {
  std::string out = "region\tdenominator\tin_graph\n";
  for (const auto& w : r.regions) {
    out += w.label + "\t(";
    for (std::size_t i = 0; i < w.denominator.size(); ++i) out += (i ? "," : "") + std::to_string(w.denominator[i]);
    out += std::string(")\t") + (w.in_graph ? "yes" : "no") + "\n";
  }
  return out;
}

}  // namespace clusterlab
