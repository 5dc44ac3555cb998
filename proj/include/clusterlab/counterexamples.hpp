#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include <json.hpp>

#include "clusterlab/matrix.hpp"

namespace clusterlab {

// [[0, 2a, -2ab], [-bg, 0, 2b], [g, -ag, 0]]; requires a, b, g >= 1 and abg >= 3.
ExchangeMatrix b_family(long alpha, long beta, long gamma);

// Off-diagonal signs follow [[0,+,-],[-,0,+],[+,-,0]] or its negative.
bool is_cyclical(const ExchangeMatrix& b);

struct BiasProfile {
  Integer c1, c2, c3, r;
  std::vector<std::size_t> biased;  // 0-based indices i with r > c_i >= r/2 >= c_j >= 6

  bool is_biased(std::size_t i) const;
};

BiasProfile bias_profile(const ExchangeMatrix& b);

struct CyclicalFuzzConfig {
  long alpha = 1;
  long beta = 1;
  long gamma = 3;
  std::size_t trials = 500;
  std::size_t depth = 12;
  std::uint64_t rng_seed = 1;
  unsigned threads = 1;
  bool audit = true;  // run the exchange-pattern axiom audit along each sequence
};

struct CyclicalFuzzReport {
  CyclicalFuzzConfig config;
  std::size_t steps = 0;
  std::size_t not_cyclical = 0;
  std::size_t transition_checks = 0;     // steps covered by the lemma (some i != j biased before)
  std::size_t transition_failures = 0;
  std::size_t symmetrizable = 0;         // visited matrices admitting a skew-symmetrizer
  std::size_t not_sign_skew = 0;
  // Steps at a bias index with no other bias index available, and how many of
  // those left the matrix without any bias certificate.
  std::size_t uncovered_steps = 0;
  std::size_t uncovered_unbiased = 0;
  std::size_t audits = 0;
  std::size_t audit_violations = 0;
  std::size_t audit_skipped = 0;  // exponents beyond machine width
  std::size_t max_entry_bits = 0;
  std::vector<std::string> failures;  // first few violation descriptions

  std::size_t violations() const {
    return not_cyclical + transition_failures + symmetrizable + not_sign_skew + audit_violations;
  }
  bool ok() const { return violations() == 0; }
};

CyclicalFuzzReport fuzz_cyclical(const CyclicalFuzzConfig& config);

nlohmann::json to_json(const BiasProfile& p);
nlohmann::json to_json(const CyclicalFuzzReport& r);

}  // namespace clusterlab
