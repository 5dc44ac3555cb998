#include "clusterlab/semifield.hpp"

#include <algorithm>
#include <sstream>

namespace clusterlab {

namespace {

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

void require_same(const SemifieldElem& a, const SemifieldElem& b) {
  if (a.index() != b.index())
    throw InstanceMismatch(std::string("semifield instance mismatch: ") + instance_name(a) + " vs " + instance_name(b));
  if (const auto* ta = std::get_if<Tropical>(&a)) {
    if (ta->exponents.size() != std::get<Tropical>(b).exponents.size())
      throw InstanceMismatch("tropical generator arity mismatch");
  }
}

Tropical zip(const Tropical& a, const Tropical& b, auto op) {
  Tropical out;
  out.exponents.reserve(a.exponents.size());
  for (std::size_t i = 0; i < a.exponents.size(); ++i) out.exponents.push_back(op(a.exponents[i], b.exponents[i]));
  return out;
}

}  // namespace

PositiveRational::PositiveRational(Rational v) : value_(std::move(v)) {
  value_.canonicalize();
  if (value_ <= 0) throw std::invalid_argument("positive rational semifield element must be > 0");
}

const char* instance_name(const SemifieldElem& a) {
  return std::visit(overloaded{[](const Trivial&) { return "trivial"; }, [](const Tropical&) { return "tropical"; },
                               [](const PositiveRational&) { return "positive-rational"; },
                               [](const MaxPlusInt&) { return "max-plus"; }},
                    a);
}

SemifieldElem one_like(const SemifieldElem& a) {
  return std::visit(
      overloaded{[](const Trivial&) -> SemifieldElem { return Trivial{}; },
                 [](const Tropical& t) -> SemifieldElem {
                   return Tropical{std::vector<Integer>(t.exponents.size(), Integer(0))};
                 },
                 [](const PositiveRational&) -> SemifieldElem { return PositiveRational(Rational(1)); },
                 [](const MaxPlusInt&) -> SemifieldElem { return MaxPlusInt{0}; }},
      a);
}

SemifieldElem mul(const SemifieldElem& a, const SemifieldElem& b) {
  require_same(a, b);
  return std::visit(
      overloaded{[](const Trivial&) -> SemifieldElem { return Trivial{}; },
                 [&](const Tropical& t) -> SemifieldElem {
                   return zip(t, std::get<Tropical>(b), [](const Integer& x, const Integer& y) { return Integer(x + y); });
                 },
                 [&](const PositiveRational& r) -> SemifieldElem {
                   return PositiveRational(r.value() * std::get<PositiveRational>(b).value());
                 },
                 [&](const MaxPlusInt& m) -> SemifieldElem { return MaxPlusInt{m.value + std::get<MaxPlusInt>(b).value}; }},
      a);
}

SemifieldElem inverse(const SemifieldElem& a) {
  return std::visit(overloaded{[](const Trivial&) -> SemifieldElem { return Trivial{}; },
                               [](const Tropical& t) -> SemifieldElem {
                                 Tropical out;
                                 for (const auto& e : t.exponents) out.exponents.push_back(-e);
                                 return out;
                               },
                               [](const PositiveRational& r) -> SemifieldElem { return PositiveRational(1 / r.value()); },
                               [](const MaxPlusInt& m) -> SemifieldElem { return MaxPlusInt{-m.value}; }},
                    a);
}

SemifieldElem div(const SemifieldElem& a, const SemifieldElem& b) { return mul(a, inverse(b)); }

SemifieldElem pow(const SemifieldElem& a, const Integer& e) {
  return std::visit(
      overloaded{[](const Trivial&) -> SemifieldElem { return Trivial{}; },
                 [&](const Tropical& t) -> SemifieldElem {
                   Tropical out;
                   for (const auto& x : t.exponents) out.exponents.push_back(x * e);
                   return out;
                 },
                 [&](const PositiveRational& r) -> SemifieldElem {
                   const long k = to_int64(e);
                   Rational base = k >= 0 ? r.value() : Rational(1 / r.value());
                   Rational out;
                   mpz_pow_ui(out.get_num_mpz_t(), base.get_num_mpz_t(), static_cast<unsigned long>(k >= 0 ? k : -k));
                   mpz_pow_ui(out.get_den_mpz_t(), base.get_den_mpz_t(), static_cast<unsigned long>(k >= 0 ? k : -k));
                   return PositiveRational(out);
                 },
                 [&](const MaxPlusInt& m) -> SemifieldElem { return MaxPlusInt{m.value * e}; }},
      a);
}

SemifieldElem oplus(const SemifieldElem& a, const SemifieldElem& b) {
  require_same(a, b);
  return std::visit(
      overloaded{[](const Trivial&) -> SemifieldElem { return Trivial{}; },
                 [&](const Tropical& t) -> SemifieldElem {
                   return zip(t, std::get<Tropical>(b),
                              [](const Integer& x, const Integer& y) { return x < y ? x : y; });
                 },
                 [&](const PositiveRational& r) -> SemifieldElem {
                   return PositiveRational(r.value() + std::get<PositiveRational>(b).value());
                 },
                 [&](const MaxPlusInt& m) -> SemifieldElem {
                   return MaxPlusInt{std::max(m.value, std::get<MaxPlusInt>(b).value)};
                 }},
      a);
}

Tropical tropical_generator(std::size_t arity, std::size_t i) {
  Tropical t{std::vector<Integer>(arity, Integer(0))};
  t.exponents.at(i) = 1;
  return t;
}

std::pair<SemifieldElem, SemifieldElem> normalize_pair(const SemifieldElem& u) {
  const SemifieldElem denom = oplus(one_like(u), u);
  return {div(u, denom), inverse(denom)};
}

CoefficientTuple mutate_coefficients(const CoefficientTuple& u, const ExchangeMatrix& b, std::size_t k) {
  if (u.u.size() != b.rank()) throw std::invalid_argument("coefficient tuple size must equal the matrix rank");
  if (k >= b.rank()) throw std::out_of_range("mutation index out of range");
  for (const auto& x : u.u) require_same(x, u.u[k]);
  const SemifieldElem& uk = u.u[k];
  const SemifieldElem one_plus = oplus(one_like(uk), uk);
  CoefficientTuple out{u.generators, {}};
  out.u.reserve(u.u.size());
  for (std::size_t i = 0; i < u.u.size(); ++i) {
    if (i == k) {
      out.u.push_back(inverse(uk));
      continue;
    }
    const Integer& bki = b(k, i);
    out.u.push_back(mul(mul(u.u[i], pow(uk, max_zero(bki))), pow(one_plus, Integer(-bki))));
  }
  return out;
}

std::vector<std::string> default_generator_names(std::size_t count, const std::string& stem) {
  std::vector<std::string> names;
  for (std::size_t i = 0; i < count; ++i) names.push_back(stem + std::to_string(i + 1));
  return names;
}

CoefficientTuple coefficients_from_matrix(const ExchangeMatrix& b, std::vector<std::string> names) {
  CoefficientTuple out;
  if (b.frozen() == 0) {
    out.u.assign(b.rank(), Trivial{});
    return out;
  }
  if (names.empty()) names = default_generator_names(b.frozen());
  if (names.size() != b.frozen()) throw std::invalid_argument("one generator name per frozen row");
  out.generators = std::move(names);
  for (std::size_t j = 0; j < b.rank(); ++j) {
    Tropical t;
    for (std::size_t i = 0; i < b.frozen(); ++i) t.exponents.push_back(b(b.rank() + i, j));
    out.u.push_back(std::move(t));
  }
  return out;
}

nlohmann::json to_json(const SemifieldElem& a, const std::vector<std::string>& generators) {
  return std::visit(overloaded{[](const Trivial&) -> nlohmann::json { return nlohmann::json::object(); },
                               [&](const Tropical& t) -> nlohmann::json {
                                 if (t.exponents.size() != generators.size())
                                   throw std::invalid_argument("tropical element arity does not match generator names");
                                 nlohmann::json out = nlohmann::json::object();
                                 for (std::size_t i = 0; i < t.exponents.size(); ++i)
                                   if (t.exponents[i] != 0) out[generators[i]] = to_int64(t.exponents[i]);
                                 return out;
                               },
                               [](const PositiveRational& r) -> nlohmann::json { return r.value().get_str(); },
                               [](const MaxPlusInt& m) -> nlohmann::json { return m.value.get_str(); }},
                    a);
}

SemifieldElem tropical_from_json(const nlohmann::json& j, const std::vector<std::string>& generators) {
  Tropical t{std::vector<Integer>(generators.size(), Integer(0))};
  for (const auto& [name, exponent] : j.items()) {
    auto it = std::find(generators.begin(), generators.end(), name);
    if (it == generators.end()) throw std::invalid_argument("unknown generator: " + name);
    t.exponents[static_cast<std::size_t>(it - generators.begin())] = exponent.get<long>();
  }
  return t;
}

nlohmann::json to_json(const CoefficientTuple& u) {
  nlohmann::json values = nlohmann::json::array();
  std::string instance = u.u.empty() ? "trivial" : instance_name(u.u.front());
  for (const auto& x : u.u) values.push_back(to_json(x, u.generators));
  return {{"semifield", instance}, {"generators", u.generators}, {"u", std::move(values)}};
}

CoefficientTuple coefficients_from_json(const nlohmann::json& j) {
  CoefficientTuple out;
  out.generators = j.value("generators", std::vector<std::string>{});
  const std::string instance = j.value("semifield", std::string("tropical"));
  for (const auto& x : j.at("u")) {
    if (instance == "tropical")
      out.u.push_back(tropical_from_json(x, out.generators));
    else if (instance == "trivial")
      out.u.push_back(Trivial{});
    else if (instance == "positive-rational")
      out.u.push_back(PositiveRational(Rational(x.get<std::string>())));
    else if (instance == "max-plus")
      out.u.push_back(MaxPlusInt{Integer(x.get<std::string>())});
    else
      throw std::invalid_argument("unknown semifield instance: " + instance);
  }
  return out;
}

std::string to_string(const SemifieldElem& a, const std::vector<std::string>& generators) {
  return std::visit(overloaded{[](const Trivial&) -> std::string { return "1"; },
                               [&](const Tropical& t) -> std::string {
                                 std::ostringstream out;
                                 bool any = false;
                                 for (std::size_t i = 0; i < t.exponents.size(); ++i) {
                                   if (t.exponents[i] == 0) continue;
                                   if (any) out << '*';
                                   out << (i < generators.size() ? generators[i] : "p" + std::to_string(i + 1));
                                   if (t.exponents[i] != 1) out << '^' << t.exponents[i].get_str();
                                   any = true;
                                 }
                                 return any ? out.str() : "1";
                               },
                               [](const PositiveRational& r) -> std::string { return r.value().get_str(); },
                               [](const MaxPlusInt& m) -> std::string { return "[" + m.value.get_str() + "]"; }},
                    a);
}

}  // namespace clusterlab
