#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include <json.hpp>

#include "clusterlab/matrix.hpp"
#include "clusterlab/numeric.hpp"

namespace clusterlab {

// Semifield instances. Multiplication is written multiplicatively for all of
// them; the auxiliary addition is
//   Tropical         componentwise min of exponent vectors
//   PositiveRational ordinary addition
//   MaxPlusInt       max (multiplication is integer addition)
//   Trivial          the one-element semifield

struct Trivial {
  bool operator==(const Trivial&) const = default;
};

struct Tropical {
  std::vector<Integer> exponents;
  bool operator==(const Tropical&) const = default;
};

class PositiveRational {
 public:
  explicit PositiveRational(Rational v);
  const Rational& value() const { return value_; }
  bool operator==(const PositiveRational&) const = default;

 private:
  Rational value_;
};

struct MaxPlusInt {
  Integer value;
  bool operator==(const MaxPlusInt&) const = default;
};

using SemifieldElem = std::variant<Trivial, Tropical, PositiveRational, MaxPlusInt>;

class InstanceMismatch : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

const char* instance_name(const SemifieldElem& a);

SemifieldElem one_like(const SemifieldElem& a);
SemifieldElem mul(const SemifieldElem& a, const SemifieldElem& b);
SemifieldElem div(const SemifieldElem& a, const SemifieldElem& b);
SemifieldElem inverse(const SemifieldElem& a);
SemifieldElem pow(const SemifieldElem& a, const Integer& e);
SemifieldElem oplus(const SemifieldElem& a, const SemifieldElem& b);

inline bool is_one(const SemifieldElem& a) { return a == one_like(a); }

// Tropical generator `i` out of `arity`.
Tropical tropical_generator(std::size_t arity, std::size_t i);

// (u / (1 + u), 1 / (1 + u)): the normalized coefficient pair with ratio u.
std::pair<SemifieldElem, SemifieldElem> normalize_pair(const SemifieldElem& u);

struct CoefficientTuple {
  std::vector<std::string> generators;  // names of tropical generators, empty otherwise
  std::vector<SemifieldElem> u;
  bool operator==(const CoefficientTuple&) const = default;
};

// u'_k = 1/u_k; u'_i = u_i u_k^{max(b_ki,0)} (1 + u_k)^{-b_ki} for i != k.
CoefficientTuple mutate_coefficients(const CoefficientTuple& u, const ExchangeMatrix& b, std::size_t k);

// Tropical tuple u_j = prod_i p_i^{c_ij} read from the frozen rows; trivial
// tuple when there are none. Generator names default to p1..pf.
CoefficientTuple coefficients_from_matrix(const ExchangeMatrix& b, std::vector<std::string> names = {});

std::vector<std::string> default_generator_names(std::size_t count, const std::string& stem = "p");

// Tropical elements serialize as {"gen": exponent} maps (zero exponents omitted).
nlohmann::json to_json(const SemifieldElem& a, const std::vector<std::string>& generators);
SemifieldElem tropical_from_json(const nlohmann::json& j, const std::vector<std::string>& generators);

nlohmann::json to_json(const CoefficientTuple& u);
CoefficientTuple coefficients_from_json(const nlohmann::json& j);

std::string to_string(const SemifieldElem& a, const std::vector<std::string>& generators = {});

}  // namespace clusterlab
