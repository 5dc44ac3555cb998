#include "clusterlab/counterexamples.hpp"

#include <algorithm>
#include <mutex>
#include <optional>
#include <stdexcept>

#include "clusterlab/random.hpp"
#include "clusterlab/seed.hpp"
#include "parallel.hpp"

namespace clusterlab {

namespace {

void require_3x3(const ExchangeMatrix& b) {
  if (b.rank() != 3) throw std::invalid_argument("expected a rank-3 matrix");
}

int sign(const Integer& v) { return sgn(v); }

struct TrialResult {
  std::size_t steps = 0;
  std::size_t not_cyclical = 0;
  std::size_t transition_checks = 0;
  std::size_t transition_failures = 0;
  std::size_t symmetrizable = 0;
  std::size_t not_sign_skew = 0;
  std::size_t uncovered_steps = 0;
  std::size_t uncovered_unbiased = 0;
  std::size_t audits = 0;
  std::size_t audit_violations = 0;
  std::size_t audit_skipped = 0;
  std::size_t max_entry_bits = 0;
  std::vector<std::string> failures;
};

std::string describe(std::size_t trial, const std::vector<std::size_t>& seq, const std::string& what) {
  std::string s = "trial " + std::to_string(trial) + " seq [";
  for (std::size_t i = 0; i < seq.size(); ++i) s += (i ? "," : "") + std::to_string(seq[i] + 1);
  return s + "]: " + what;
}

TrialResult run_trial(const CyclicalFuzzConfig& config, std::size_t trial) {
  Rng rng = Rng::stream(config.rng_seed, trial);
  const std::size_t length = config.depth == 0 ? 0 : 1 + rng.below(config.depth);
  std::vector<std::size_t> seq;
  for (std::size_t s = 0; s < length; ++s) seq.push_back(rng.below(3));

  TrialResult r;
  ExchangeMatrix b = b_family(config.alpha, config.beta, config.gamma);
  std::vector<std::size_t> done;
  for (std::size_t j : seq) {
    const bool cyclical_before = is_cyclical(b);
    const auto before = bias_profile(b);
    const bool covered =
        cyclical_before && std::any_of(before.biased.begin(), before.biased.end(), [&](std::size_t i) { return i != j; });
    b = mutate(b, j);
    done.push_back(j);
    ++r.steps;
    const auto after = bias_profile(b);
    for (std::size_t i = 0; i < 3; ++i)
      for (std::size_t k = 0; k < 3; ++k) r.max_entry_bits = std::max(r.max_entry_bits, mpz_sizeinbase(b(i, k).get_mpz_t(), 2));
    const bool cyclical = is_cyclical(b);
    if (!cyclical) {
      ++r.not_cyclical;
      r.failures.push_back(describe(trial, done, "matrix is not cyclical"));
    }
    if (covered) {
      ++r.transition_checks;
      if (!cyclical || !after.is_biased(j)) {
        ++r.transition_failures;
        r.failures.push_back(describe(trial, done, "bias transition failed"));
      }
    } else {
      ++r.uncovered_steps;
      if (after.biased.empty()) ++r.uncovered_unbiased;
    }
    if (!is_sign_skew_symmetric(b)) {
      ++r.not_sign_skew;
      r.failures.push_back(describe(trial, done, "matrix is not sign-skew-symmetric"));
    }
    if (find_skew_symmetrizer(b)) {
      ++r.symmetrizable;
      r.failures.push_back(describe(trial, done, "matrix is skew-symmetrizable"));
    }
  }
  if (config.audit) {
    try {
      const auto audit = audit_axioms(b_family(config.alpha, config.beta, config.gamma), seq);
      ++r.audits;
      if (!audit.ok()) {
        ++r.audit_violations;
        r.failures.push_back(describe(trial, seq, "axiom " + audit.violations.front().axiom + " fails"));
      }
    } catch (const std::overflow_error&) {
      ++r.audit_skipped;
    }
  }
  return r;
}

}  // namespace

ExchangeMatrix b_family(long alpha, long beta, long gamma) {
  if (alpha < 1 || beta < 1 || gamma < 1) throw std::invalid_argument("alpha, beta, gamma must be positive");
  if (alpha * beta * gamma < 3) throw std::invalid_argument("alpha * beta * gamma must be at least 3");
  return ExchangeMatrix::square(
      {{0, 2 * alpha, -2 * alpha * beta}, {-beta * gamma, 0, 2 * beta}, {gamma, -alpha * gamma, 0}});
}

bool is_cyclical(const ExchangeMatrix& b) {
  if (b.rank() != 3) return false;
  const int s = sign(b(0, 1));
  if (s == 0) return false;
  // Pattern [[0,+,-],[-,0,+],[+,-,0]] times s.
  return sign(b(0, 2)) == -s && sign(b(1, 0)) == -s && sign(b(1, 2)) == s && sign(b(2, 0)) == s && sign(b(2, 1)) == -s;
}

bool BiasProfile::is_biased(std::size_t i) const { return std::find(biased.begin(), biased.end(), i) != biased.end(); }

BiasProfile bias_profile(const ExchangeMatrix& b) {
  require_3x3(b);
  BiasProfile p;
  p.c1 = abs(Integer(b(1, 2) * b(2, 1)));
  p.c2 = abs(Integer(b(0, 2) * b(2, 0)));
  p.c3 = abs(Integer(b(0, 1) * b(1, 0)));
  p.r = abs(Integer(b(0, 1) * b(1, 2) * b(2, 0)));
  const Integer* c[3] = {&p.c1, &p.c2, &p.c3};
  for (std::size_t i = 0; i < 3; ++i) {
    bool ok = p.r > *c[i] && 2 * *c[i] >= p.r;
    for (std::size_t j = 0; j < 3 && ok; ++j)
      if (j != i) ok = p.r >= 2 * *c[j] && *c[j] >= 6;
    if (ok) p.biased.push_back(i);
  }
  return p;
}

CyclicalFuzzReport fuzz_cyclical(const CyclicalFuzzConfig& config) {
  b_family(config.alpha, config.beta, config.gamma);
  std::vector<TrialResult> results(config.trials);
  detail::parallel_for(config.trials, config.threads, [&](std::size_t t) { results[t] = run_trial(config, t); });
  CyclicalFuzzReport r;
  r.config = config;
  for (const auto& t : results) {
    r.steps += t.steps;
    r.not_cyclical += t.not_cyclical;
    r.transition_checks += t.transition_checks;
    r.transition_failures += t.transition_failures;
    r.symmetrizable += t.symmetrizable;
    r.not_sign_skew += t.not_sign_skew;
    r.uncovered_steps += t.uncovered_steps;
    r.uncovered_unbiased += t.uncovered_unbiased;
    r.audits += t.audits;
    r.audit_violations += t.audit_violations;
    r.audit_skipped += t.audit_skipped;
    r.max_entry_bits = std::max(r.max_entry_bits, t.max_entry_bits);
    for (const auto& f : t.failures)
      if (r.failures.size() < 20) r.failures.push_back(f);
  }
  return r;
}

nlohmann::json to_json(const BiasProfile& p) {
  std::vector<std::size_t> biased;
  for (auto i : p.biased) biased.push_back(i + 1);
  return {{"c1", p.c1.get_str()}, {"c2", p.c2.get_str()}, {"c3", p.c3.get_str()}, {"r", p.r.get_str()}, {"biased", biased}};
}

nlohmann::json to_json(const CyclicalFuzzReport& r) {
  return {{"alpha", r.config.alpha},
          {"beta", r.config.beta},
          {"gamma", r.config.gamma},
          {"trials", r.config.trials},
          {"depth", r.config.depth},
          {"rng_seed", r.config.rng_seed},
          {"steps", r.steps},
          {"not_cyclical", r.not_cyclical},
          {"transition_checks", r.transition_checks},
          {"transition_failures", r.transition_failures},
          {"symmetrizable", r.symmetrizable},
          {"not_sign_skew_symmetric", r.not_sign_skew},
          {"uncovered_steps", r.uncovered_steps},
          {"uncovered_unbiased", r.uncovered_unbiased},
          {"audits", r.audits},
          {"audit_violations", r.audit_violations},
          {"audit_skipped", r.audit_skipped},
          {"max_entry_bits", r.max_entry_bits},
          {"violations", r.violations()},
          {"ok", r.ok()},
          {"failures", r.failures}};
}

}  // namespace clusterlab
