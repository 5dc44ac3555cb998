#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "clusterlab/laurent.hpp"
#include "clusterlab/matrix.hpp"
#include "clusterlab/semifield.hpp"

namespace clusterlab {

// A seed with its cluster expanded in the initial cluster. Polynomials have
// arity rank() + generator count: the initial cluster variables come first,
// then the coefficient generators (frozen rows, or the tropical generators
// of `coeffs`).
struct Seed {
  ExchangeMatrix matrix;
  std::vector<LaurentPoly> cluster;
  std::optional<CoefficientTuple> coeffs;
  std::vector<std::size_t> history;
  std::vector<std::string> generators;

  std::size_t rank() const { return matrix.rank(); }
  std::size_t arity() const { return matrix.rank() + generators.size(); }

  // x1..xn followed by the generator names.
  std::vector<std::string> variable_names() const;

  bool operator==(const Seed&) const = default;
};

// Raised when an exchange leaves a nonzero remainder. The payload holds the
// matrix, history and both operands in the external JSON formats.
class LaurentViolation : public std::runtime_error {
 public:
  LaurentViolation(const std::string& what, nlohmann::json dump) : std::runtime_error(what), dump_(std::move(dump)) {}
  const nlohmann::json& dump() const { return dump_; }

 private:
  nlohmann::json dump_;
};

// Geometric type: coefficients live in the frozen rows. `names` defaults to p1..pf.
Seed initial_seed(const ExchangeMatrix& b, std::vector<std::string> names = {});

// Coefficients given as a tuple over a tropical (or trivial) semifield; the
// matrix must then have no frozen rows.
Seed initial_seed(const ExchangeMatrix& b, const CoefficientTuple& coeffs);

// Exponent vector over the seed's variables: cluster part then generator part.
struct ExchangeMonomial {
  std::vector<Exponent> exponents;
  bool operator==(const ExchangeMonomial&) const = default;
};

struct ExchangeRelationRecord {
  std::size_t k = 0;
  LaurentPoly lhs_old;
  LaurentPoly lhs_new;
  ExchangeMonomial m1;
  ExchangeMonomial m2;
  bool operator==(const ExchangeRelationRecord&) const = default;
};

// The two monomials for exchanging k out of s (no expansion).
std::pair<ExchangeMonomial, ExchangeMonomial> exchange_monomials(const Seed& s, std::size_t k);

// prod cluster[i]^e_i * prod generator^e: the monomial expanded in the initial cluster.
LaurentPoly expand(const Seed& s, const ExchangeMonomial& m);

Seed mutate_seed(const Seed& s, std::size_t k);
Seed apply_sequence(const Seed& s, std::span<const std::size_t> ks);

ExchangeRelationRecord exchange_relation(const Seed& s, std::size_t k);

// Renders "old*new = m1 + m2" with variables named by the seed (cluster
// variables of s for the left-hand side are written as x'k).
std::string to_string(const ExchangeRelationRecord& r, const Seed& s);

// {"matrix": ..., "history": [...], "cluster": [<term-list>...]} plus
// "generators" and "coefficients" when present.
nlohmann::json to_json(const Seed& s);
Seed seed_from_json(const nlohmann::json& j);

struct AuditViolation {
  std::string axiom;  // "2.2", "2.3", "2.4", "2.5" or "5.1"
  std::vector<std::size_t> at;  // mutation sequence leading to the vertex t2
  std::size_t i = 0;
  std::size_t j = 0;
  std::string detail;
};

struct AuditReport {
  std::size_t vertices = 0;
  std::size_t checks = 0;
  std::vector<AuditViolation> violations;
  bool ok() const { return violations.empty(); }
};

// Walks the path ks from the initial vertex and checks the exchange-pattern
// axioms at every visited vertex t, over all pairs i != j, on the path
// t1 -i- t2 = t -j- t3 -i- t4. Monomials are read from each vertex's own
// matrix and coefficients. The matrix is not required to be sign-skew-symmetric.
AuditReport audit_axioms(const ExchangeMatrix& b, std::span<const std::size_t> ks,
                         const std::optional<CoefficientTuple>& coeffs = std::nullopt);

// Seed whose cluster is expressed over the cluster variables alone, with the
// generators replaced by positive rational values.
struct SpecializedSeed {
  ExchangeMatrix matrix;
  std::vector<RationalLaurentPoly> cluster;
  std::vector<std::size_t> history;
};

SpecializedSeed specialize_coefficients(const Seed& s, const std::map<std::string, Rational>& assignment);

// Laurent fuzz harness.
struct FuzzConfig {
  std::size_t trials = 200;
  std::size_t max_rank = 4;
  long bound = 3;
  std::size_t max_frozen = 2;
  std::size_t max_length = 10;
  std::uint64_t rng_seed = 1;
  unsigned threads = 1;
  bool check_exchange = true;
  // Heap operations allowed per trial (0 = unlimited). A trial that runs out
  // is reported as exhausted: neither verified nor a violation.
  std::uint64_t work_budget = 0;
  // Directory for positivity reproducers; empty disables writing.
  std::string reproducer_dir;
};

struct FuzzTrial {
  ExchangeMatrix matrix;
  std::vector<std::size_t> sequence;
  std::size_t steps = 0;
  std::size_t max_terms = 0;
  bool laurent_violation = false;
  bool exchange_mismatch = false;
  bool exhausted = false;
  std::size_t non_positive = 0;
  std::size_t expansions = 0;
  std::uint64_t work = 0;
  std::string detail;
};

struct FuzzReport {
  std::vector<FuzzTrial> trials;
  std::size_t steps = 0;
  std::size_t laurent_violations = 0;
  std::size_t exchange_mismatches = 0;
  std::size_t exhausted = 0;
  std::size_t non_positive = 0;  // expansions with a non-positive coefficient
  std::size_t expansions = 0;
  std::vector<std::string> reproducers;
  bool ok() const { return laurent_violations == 0 && exchange_mismatches == 0; }
  bool complete() const { return exhausted == 0; }
};

// The matrix and sequence of trial `index` under the master seed.
std::pair<ExchangeMatrix, std::vector<std::size_t>> fuzz_case(const FuzzConfig& config, std::size_t index);

FuzzReport laurent_fuzz(const FuzzConfig& config);

nlohmann::json to_json(const FuzzReport& r);

}  // namespace clusterlab
