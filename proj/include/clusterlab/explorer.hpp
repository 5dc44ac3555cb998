#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "clusterlab/seed.hpp"

namespace clusterlab {

// Seed data up to relabeling: the cluster sorted by canonical polynomial
// order, with the matrix and coefficient tuple permuted to match.
// sigma[r] is the original index of the r-th sorted variable.
struct CanonicalSeedKey {
  std::vector<LaurentPoly> cluster;
  ExchangeMatrix matrix;
  std::optional<CoefficientTuple> coeffs;
  std::vector<std::size_t> sigma;
  std::size_t hash = 0;  // of the cluster alone

  bool same_cluster(const CanonicalSeedKey& o) const { return hash == o.hash && cluster == o.cluster; }
  bool same_exchange_data(const CanonicalSeedKey& o) const { return matrix == o.matrix && coeffs == o.coeffs; }
  bool operator==(const CanonicalSeedKey& o) const { return same_cluster(o) && same_exchange_data(o); }
};

CanonicalSeedKey canonical_key(const Seed& s);

struct Equivalence {
  bool equivalent = false;  // clusters agree as sets
  bool anomaly = false;     // clusters agree but the exchange data does not
  // sigma[i] = index in s1 of the variable at index i of s2.
  std::vector<std::size_t> sigma;
};

Equivalence seeds_equivalent(const Seed& s1, const Seed& s2);

struct ExploreLimits {
  std::size_t max_vertices = 10000;
  std::size_t max_depth = 64;
  unsigned threads = 1;
};

struct GraphVertex {
  CanonicalSeedKey key;
  Seed seed;  // representative, reached by a shortest path
  std::size_t depth = 0;
  // neighbor[l] for the variable at sorted position l: (vertex, sorted position there).
  std::vector<std::optional<std::pair<std::size_t, std::size_t>>> neighbor;

  bool boundary() const;
};

struct GraphEdge {
  std::size_t source = 0;
  std::size_t target = 0;
  std::size_t source_label = 0;  // sorted position of the exchanged variable at source
  std::size_t target_label = 0;
  ExchangeRelationRecord relation;  // written in the source representative's labels
  bool operator==(const GraphEdge&) const = default;
};

struct GraphAnomaly {
  std::size_t vertex = 0;
  std::vector<std::size_t> history;  // the seed whose cluster matched
  bool operator==(const GraphAnomaly&) const = default;
};

struct ExchangeGraph {
  ExchangeMatrix initial;
  std::optional<CoefficientTuple> coeffs;
  std::vector<std::string> generators;
  std::vector<GraphVertex> vertices;
  std::vector<GraphEdge> edges;
  std::vector<GraphAnomaly> anomalies;
  bool complete = false;

  std::size_t rank() const { return initial.rank(); }
  std::vector<std::size_t> boundary_vertices() const;
  // Every interior vertex has n distinct neighbors, consistently paired.
  bool regular() const;
  // Distinct cluster variables over all vertices, canonically ordered.
  std::vector<LaurentPoly> cluster_variables() const;
};

bool operator==(const GraphVertex& a, const GraphVertex& b);
bool operator==(const ExchangeGraph& a, const ExchangeGraph& b);

// Breadth-first search from the initial seed modulo M-equivalence. Levels are
// expanded in parallel and merged in a fixed order, so the result does not
// depend on the thread count.
ExchangeGraph explore(const Seed& initial, const ExploreLimits& limits);
ExchangeGraph explore(const ExchangeMatrix& b, const ExploreLimits& limits);

// Thrown by explore when a complete graph fails n-regularity.
class RegularityViolation : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Vertices labeled by the denominator vectors of the sorted cluster, edges
// by the exchanged sorted positions.
std::string export_dot(const ExchangeGraph& g);

nlohmann::json to_json(const ExchangeRelationRecord& r);
ExchangeRelationRecord relation_from_json(const nlohmann::json& j, std::size_t arity);

// {"format": "clusterlab-graph-v1", ...}
nlohmann::json to_json(const ExchangeGraph& g);
std::string export_json(const ExchangeGraph& g);
ExchangeGraph graph_from_json(const nlohmann::json& j);

// Coxeter number of the rank-2 system with |b_ij b_ji| = product, or 0 when infinite.
std::size_t coxeter_number_for_product(const Integer& product);

// Walks i, j, i, ... for h + 2 steps from s (requires |b_ij b_ji| <= 3) and
// compares the endpoint with s.
struct AlternatingCycle {
  std::size_t h = 0;
  Seed end;
  Equivalence equivalence;
};
AlternatingCycle alternating_cycle(const Seed& s, std::size_t i, std::size_t j);

// Regions of the two-layer brick wall: y_-4..y_8 plus the unbounded regions w
// (top) and z (bottom), each reached from the initial cluster (y1, y2, y3) by
// an explicit mutation path and located in the explored graph.
struct WallRegion {
  std::string label;
  std::vector<std::size_t> path;
  std::size_t slot = 0;  // position of the variable after the last step
  LaurentPoly variable;
  DenominatorVector denominator;
  bool in_graph = false;
};

struct WallReport {
  ExchangeGraph graph;
  std::vector<WallRegion> regions;
  const WallRegion& at(const std::string& label) const;
};

WallReport brick_wall_regions(const ExploreLimits& limits = {10000, 5, 1});

nlohmann::json to_json(const WallReport& r);
std::string to_table(const WallReport& r);

}  // namespace clusterlab
