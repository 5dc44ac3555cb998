#include "clusterlab/seed.hpp"

#include <filesystem>
#include <fstream>
#include <mutex>
#include <sstream>

#include "clusterlab/catalog.hpp"
#include "clusterlab/random.hpp"
#include "parallel.hpp"

namespace clusterlab {

namespace {

std::vector<std::string> cluster_names(std::size_t n, const std::string& stem) {
  std::vector<std::string> names;
  for (std::size_t i = 0; i < n; ++i) names.push_back(stem + std::to_string(i + 1));
  return names;
}

void require_index(const Seed& s, std::size_t k) {
  if (k >= s.rank()) throw std::out_of_range("mutation index out of range");
}

std::vector<Exponent> tropical_exponents(const SemifieldElem& e, std::size_t arity) {
  if (std::holds_alternative<Trivial>(e)) return std::vector<Exponent>(arity, 0);
  const auto* t = std::get_if<Tropical>(&e);
  if (t == nullptr) throw std::invalid_argument("seed coefficients must be tropical or trivial");
  if (t->exponents.size() != arity) throw std::invalid_argument("tropical coefficient arity mismatch");
  std::vector<Exponent> out;
  for (const auto& x : t->exponents) out.push_back(to_exponent(x));
  return out;
}

// Monomial at one end of the edge in direction k: positive part of column k
// (sign = +1) or of its negative (sign = -1) plus the matching coefficient.
ExchangeMonomial column_monomial(const ExchangeMatrix& b, std::size_t k, int sign, const std::vector<Exponent>& coeff) {
  ExchangeMonomial m;
  m.exponents.assign(b.rank() + coeff.size(), 0);
  for (std::size_t i = 0; i < b.rank(); ++i) {
    const Integer v = sign > 0 ? Integer(b(i, k)) : Integer(-b(i, k));
    if (v > 0) m.exponents[i] = to_exponent(v);
  }
  for (std::size_t g = 0; g < coeff.size(); ++g) m.exponents[b.rank() + g] = coeff[g];
  return m;
}

}  // namespace

std::vector<std::string> Seed::variable_names() const {
  auto names = cluster_names(rank(), "x");
  names.insert(names.end(), generators.begin(), generators.end());
  return names;
}

Seed initial_seed(const ExchangeMatrix& b, std::vector<std::string> names) {
  if (!is_sign_skew_symmetric(b.principal())) throw std::invalid_argument("principal part is not sign-skew-symmetric");
  if (names.empty()) names = default_generator_names(b.frozen());
  if (names.size() != b.frozen()) throw std::invalid_argument("one generator name per frozen row");
  Seed s{b, {}, std::nullopt, {}, std::move(names)};
  for (std::size_t i = 0; i < b.rank(); ++i) s.cluster.push_back(LaurentPoly::variable(s.arity(), i));
  return s;
}

Seed initial_seed(const ExchangeMatrix& b, const CoefficientTuple& coeffs) {
  if (b.frozen() != 0) throw std::invalid_argument("coefficient tuples require a matrix without frozen rows");
  if (coeffs.u.size() != b.rank()) throw std::invalid_argument("coefficient tuple size must equal the rank");
  for (const auto& u : coeffs.u) tropical_exponents(u, coeffs.generators.size());
  Seed s = initial_seed(b);
  s.coeffs = coeffs;
  s.generators = coeffs.generators;
  s.cluster.clear();
  for (std::size_t i = 0; i < b.rank(); ++i) s.cluster.push_back(LaurentPoly::variable(s.arity(), i));
  return s;
}

std::pair<ExchangeMonomial, ExchangeMonomial> exchange_monomials(const Seed& s, std::size_t k) {
  require_index(s, k);
  const std::size_t g = s.generators.size();
  std::vector<Exponent> p(g, 0);
  std::vector<Exponent> pp(g, 0);
  if (s.coeffs) {
    const auto [a, b] = normalize_pair(s.coeffs->u[k]);
    p = tropical_exponents(a, g);
    pp = tropical_exponents(b, g);
  } else {
    for (std::size_t r = 0; r < g; ++r) {
      const Integer& c = s.matrix(s.rank() + r, k);
      if (c > 0) p[r] = to_exponent(c);
      if (c < 0) pp[r] = to_exponent(Integer(-c));
    }
  }
  return {column_monomial(s.matrix, k, 1, p), column_monomial(s.matrix, k, -1, pp)};
}

LaurentPoly expand(const Seed& s, const ExchangeMonomial& m) {
  if (m.exponents.size() != s.arity()) throw ArityMismatch("monomial arity does not match the seed");
  std::vector<Exponent> gens(s.arity(), 0);
  for (std::size_t v = s.rank(); v < s.arity(); ++v) gens[v] = m.exponents[v];
  LaurentPoly out = LaurentPoly::monomial(gens);
  for (std::size_t i = 0; i < s.rank(); ++i) {
    const Exponent e = m.exponents[i];
    if (e < 0) throw std::invalid_argument("exchange monomials have nonnegative cluster exponents");
    if (e > 0) out = mul(out, pow(s.cluster[i], static_cast<std::uint64_t>(e)));
  }
  return out;
}

Seed mutate_seed(const Seed& s, std::size_t k) {
  require_index(s, k);
  const auto [m1, m2] = exchange_monomials(s, k);
  const LaurentPoly num = add(expand(s, m1), expand(s, m2));
  Seed out = s;
  try {
    out.cluster[k] = exact_div(num, s.cluster[k]);
  } catch (const NotDivisible& e) {
    nlohmann::json dump = {{"seed", to_json(s)}, {"k", k}, {"numerator", to_json(num)}, {"denominator", to_json(s.cluster[k])}};
    throw LaurentViolation(std::string("exchange is not a Laurent polynomial: ") + e.what(), std::move(dump));
  }
  out.matrix = mutate(s.matrix, k);
  if (s.coeffs) out.coeffs = mutate_coefficients(*s.coeffs, s.matrix, k);
  // The history is the reduced path in the tree, so a double mutation restores it too.
  if (!out.history.empty() && out.history.back() == k)
    out.history.pop_back();
  else
    out.history.push_back(k);
  return out;
}

Seed apply_sequence(const Seed& s, std::span<const std::size_t> ks) {
  Seed out = s;
  for (std::size_t k : ks) out = mutate_seed(out, k);
  return out;
}

ExchangeRelationRecord exchange_relation(const Seed& s, std::size_t k) {
  auto [m1, m2] = exchange_monomials(s, k);
  const Seed next = mutate_seed(s, k);
  return {k, s.cluster[k], next.cluster[k], std::move(m1), std::move(m2)};
}

std::string to_string(const ExchangeRelationRecord& r, const Seed& s) {
  auto names = cluster_names(s.rank(), "c");
  names.insert(names.end(), s.generators.begin(), s.generators.end());
  const auto render = [&](const ExchangeMonomial& m) {
    return to_string(LaurentPoly::monomial(m.exponents), names);
  };
  return "c" + std::to_string(r.k + 1) + " * c" + std::to_string(r.k + 1) + "' = " + render(r.m1) + " + " + render(r.m2);
}

nlohmann::json to_json(const Seed& s) {
  nlohmann::json cluster = nlohmann::json::array();
  for (const auto& p : s.cluster) cluster.push_back(to_json(p));
  nlohmann::json out = {{"matrix", to_json(s.matrix)}, {"history", s.history}, {"cluster", std::move(cluster)}};
  if (!s.generators.empty()) out["generators"] = s.generators;
  if (s.coeffs) out["coefficients"] = to_json(*s.coeffs);
  return out;
}

Seed seed_from_json(const nlohmann::json& j) {
  Seed s{matrix_from_json(j.at("matrix")), {}, std::nullopt, j.value("history", std::vector<std::size_t>{}), {}};
  if (j.contains("coefficients")) s.coeffs = coefficients_from_json(j.at("coefficients"));
  if (j.contains("generators"))
    s.generators = j.at("generators").get<std::vector<std::string>>();
  else if (s.coeffs)
    s.generators = s.coeffs->generators;
  else
    s.generators = default_generator_names(s.matrix.frozen());
  if (j.contains("cluster")) {
    for (const auto& p : j.at("cluster")) s.cluster.push_back(laurent_from_json(p, s.arity()));
    if (s.cluster.size() != s.rank()) throw std::invalid_argument("cluster size must equal the rank");
  } else {
    for (std::size_t i = 0; i < s.rank(); ++i) s.cluster.push_back(LaurentPoly::variable(s.arity(), i));
  }
  return s;
}

namespace {

struct Vertex {
  ExchangeMatrix b;
  CoefficientTuple u;

  Vertex step(std::size_t k) const { return {mutate(b, k), mutate_coefficients(u, b, k)}; }

  SemifieldElem p(std::size_t k) const { return normalize_pair(u.u[k]).first; }

  // M_k at this vertex, coefficient part included when it is tropical.
  std::vector<Exponent> monomial(std::size_t k) const {
    const SemifieldElem pk = p(k);
    std::vector<Exponent> coeff;
    if (const auto* t = std::get_if<Tropical>(&pk))
      for (const auto& x : t->exponents) coeff.push_back(to_exponent(x));
    return column_monomial(b, k, 1, coeff).exponents;
  }
};

std::string show(const std::vector<Exponent>& e) {
  std::ostringstream out;
  out << '(';
  for (std::size_t i = 0; i < e.size(); ++i) out << (i ? "," : "") << e[i];
  out << ')';
  return out.str();
}

void audit_vertex(const Vertex& t2, const std::vector<std::size_t>& at, AuditReport& report) {
  const std::size_t n = t2.b.rank();
  auto violation = [&](const char* axiom, std::size_t i, std::size_t j, std::string detail) {
    report.violations.push_back({axiom, at, i, j, std::move(detail)});
  };
  std::vector<Vertex> neighbours;
  for (std::size_t k = 0; k < n; ++k) neighbours.push_back(t2.step(k));
  for (std::size_t j = 0; j < n; ++j) {
    const auto mj = t2.monomial(j);
    const auto mj_other = neighbours[j].monomial(j);
    ++report.checks;
    if (mj[j] != 0) violation("2.2", j, j, "x_j divides M_j(t)");
    for (std::size_t i = 0; i < n; ++i) {
      ++report.checks;
      if (mj[i] > 0 && mj_other[i] > 0) violation("2.3", i, j, "x_i divides both monomials of the edge");
    }
  }
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      if (i == j) continue;
      const Vertex& t1 = neighbours[i];
      const Vertex& t3 = neighbours[j];
      const Vertex t4 = t3.step(i);
      const auto mi_t1 = t1.monomial(i);
      const auto mi_t2 = t2.monomial(i);
      const auto mi_t3 = t3.monomial(i);
      const auto mi_t4 = t4.monomial(i);
      const auto mj_t2 = t2.monomial(j);
      const auto mj_t3 = t3.monomial(j);

      ++report.checks;
      if ((mi_t1[j] > 0) != (mj_t2[i] > 0)) violation("2.4", i, j, "x_j | M_i(t1) disagrees with x_i | M_j(t2)");

      ++report.checks;
      const std::size_t len = mi_t1.size();
      std::vector<Exponent> lhs(len);
      std::vector<Exponent> r(len);
      for (std::size_t v = 0; v < len; ++v) {
        lhs[v] = checked_sub(mi_t3[v], mi_t4[v]);
        r[v] = checked_sub(mi_t2[v], mi_t1[v]);
      }
      std::vector<Exponent> rhs = r;
      if (r[j] != 0) {
        const bool a = mj_t2[i] > 0;
        const bool c = mj_t3[i] > 0;
        if (a == c) {
          violation("2.5", i, j, a ? "M0 vanishes" : "M0 is not a monomial");
          continue;
        }
        const auto& m0 = a ? mj_t3 : mj_t2;
        const Exponent rj = r[j];
        rhs[j] = 0;
        for (std::size_t v = 0; v < len; ++v) rhs[v] = checked_add(rhs[v], checked_mul(rj, m0[v]));
        rhs[j] = checked_sub(rhs[j], rj);
      }
      if (lhs != rhs) violation("2.5", i, j, "M_i(t3)/M_i(t4) = " + show(lhs) + " but substitution gives " + show(rhs));

      ++report.checks;
      const auto left = mul(mul(t1.p(i), t3.p(i)), pow(t3.p(j), max_zero(t3.b(j, i))));
      const auto right = mul(mul(t2.p(i), t4.p(i)), pow(t2.p(j), max_zero(t2.b(j, i))));
      if (!(left == right)) violation("5.1", i, j, to_string(left) + " != " + to_string(right));
    }
  }
}

}  // namespace

AuditReport audit_axioms(const ExchangeMatrix& b, std::span<const std::size_t> ks, const std::optional<CoefficientTuple>& coeffs) {
  if (coeffs && b.frozen() != 0) throw std::invalid_argument("coefficient tuples require a matrix without frozen rows");
  Vertex t{b, coeffs ? *coeffs : coefficients_from_matrix(b)};
  AuditReport report;
  std::vector<std::size_t> at;
  for (std::size_t step = 0;; ++step) {
    audit_vertex(t, at, report);
    ++report.vertices;
    if (step == ks.size()) break;
    if (ks[step] >= b.rank()) throw std::out_of_range("mutation index out of range");
    t = t.step(ks[step]);
    at.push_back(ks[step]);
  }
  return report;
}

SpecializedSeed specialize_coefficients(const Seed& s, const std::map<std::string, Rational>& assignment) {
  std::vector<Rational> values;
  for (const auto& g : s.generators) {
    auto it = assignment.find(g);
    if (it == assignment.end()) throw std::invalid_argument("no value assigned to generator " + g);
    if (it->second <= 0) throw std::invalid_argument("generator values must be positive");
    values.push_back(it->second);
  }
  SpecializedSeed out{s.matrix.principal(), {}, s.history};
  for (const auto& p : s.cluster) out.cluster.push_back(substitute_tail(p, s.rank(), values));
  return out;
}

std::pair<ExchangeMatrix, std::vector<std::size_t>> fuzz_case(const FuzzConfig& config, std::size_t index) {
  Rng rng = Rng::stream(config.rng_seed, index);
  const std::size_t n = 1 + rng.below(config.max_rank);
  const std::size_t f = rng.below(config.max_frozen + 1);
  ExchangeMatrix b = random_skew_symmetrizable(rng, n, config.bound, f);
  const std::size_t length = 1 + rng.below(config.max_length);
  std::vector<std::size_t> seq;
  for (std::size_t i = 0; i < length; ++i) seq.push_back(rng.below(n));
  return {std::move(b), std::move(seq)};
}

namespace {

FuzzTrial run_trial(const FuzzConfig& config, std::size_t index, std::vector<std::string>& reproducers, std::mutex& mu) {
  auto [b, seq] = fuzz_case(config, index);
  FuzzTrial trial{b, seq, 0, 0, false, false, false, 0, 0, 0, {}};
  Seed s = initial_seed(b);
  auto note_positivity = [&](const Seed& seed) {
    for (const auto& p : seed.cluster) {
      ++trial.expansions;
      trial.max_terms = std::max(trial.max_terms, p.size());
      if (is_positive(p)) continue;
      ++trial.non_positive;
      if (config.reproducer_dir.empty()) continue;
      nlohmann::json j = {{"matrix", to_json(b)}, {"sequence", seq}, {"seed", to_json(seed)}, {"polynomial", to_json(p)}};
      std::filesystem::create_directories(config.reproducer_dir);
      const std::string path =
          config.reproducer_dir + "/positivity-" + std::to_string(index) + "-" + std::to_string(trial.steps) + ".json";
      std::ofstream(path) << j.dump(2) << '\n';
      std::lock_guard lock(mu);
      reproducers.push_back(path);
    }
  };
  WorkBudget budget(config.work_budget == 0 ? UINT64_MAX : config.work_budget);
  try {
    for (std::size_t k : seq) {
      const auto [m1, m2] = exchange_monomials(s, k);
      Seed next = mutate_seed(s, k);
      ++trial.steps;
      if (config.check_exchange) {
        const LaurentPoly lhs = mul(s.cluster[k], next.cluster[k]);
        const LaurentPoly rhs = add(expand(s, m1), expand(s, m2));
        if (!(lhs == rhs)) {
          trial.exchange_mismatch = true;
          trial.detail = "exchange identity fails at step " + std::to_string(trial.steps);
        }
      }
      s = std::move(next);
      note_positivity(s);
    }
  } catch (const LaurentViolation& e) {
    trial.laurent_violation = true;
    trial.detail = std::string(e.what()) + "\n" + e.dump().dump();
  } catch (const WorkBudgetExceeded&) {
    trial.exhausted = true;
    trial.detail = "work budget exhausted after " + std::to_string(trial.steps) + " steps";
  }
  trial.work = budget.used();
  return trial;
}

}  // namespace

FuzzReport laurent_fuzz(const FuzzConfig& config) {
  FuzzReport report;
  std::vector<std::optional<FuzzTrial>> slots(config.trials);
  std::mutex mu;
  detail::parallel_for(config.trials, config.threads,
                       [&](std::size_t i) { slots[i] = run_trial(config, i, report.reproducers, mu); });
  std::sort(report.reproducers.begin(), report.reproducers.end());
  for (auto& t : slots) {
    report.steps += t->steps;
    report.expansions += t->expansions;
    report.laurent_violations += t->laurent_violation ? 1 : 0;
    report.exchange_mismatches += t->exchange_mismatch ? 1 : 0;
    report.exhausted += t->exhausted ? 1 : 0;
    report.non_positive += t->non_positive;
    report.trials.push_back(std::move(*t));
  }
  return report;
}

nlohmann::json to_json(const FuzzReport& r) {
  nlohmann::json trials = nlohmann::json::array();
  for (const auto& t : r.trials) {
    nlohmann::json j = {{"matrix", to_json(t.matrix)}, {"sequence", t.sequence}, {"steps", t.steps},
                        {"max_terms", t.max_terms}, {"laurent_violation", t.laurent_violation},
                        {"exchange_mismatch", t.exchange_mismatch}, {"exhausted", t.exhausted},
                        {"non_positive", t.non_positive}, {"work", t.work}};
    if (!t.detail.empty()) j["detail"] = t.detail;
    trials.push_back(std::move(j));
  }
  return {{"trials", std::move(trials)},       {"steps", r.steps},
          {"laurent_violations", r.laurent_violations}, {"exchange_mismatches", r.exchange_mismatches},
          {"exhausted", r.exhausted},
          {"non_positive", r.non_positive},   {"expansions", r.expansions},
          {"reproducers", r.reproducers},     {"ok", r.ok()}};
}

}  // namespace clusterlab
