#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "clusterlab/numeric.hpp"

namespace clusterlab {

class NotDivisible : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class ArityMismatch : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class WorkBudgetExceeded : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Per-thread cap on heap operations spent in mul and exact_div while the
// object is alive; exceeding it throws WorkBudgetExceeded. Budgets nest, the
// innermost one is charged.
class WorkBudget {
 public:
  explicit WorkBudget(std::uint64_t limit);
  ~WorkBudget();
  WorkBudget(const WorkBudget&) = delete;
  WorkBudget& operator=(const WorkBudget&) = delete;

  std::uint64_t used() const { return used_; }
  std::uint64_t limit() const { return limit_; }

  static void charge(std::uint64_t ops);

 private:
  std::uint64_t limit_;
  std::uint64_t used_ = 0;
  WorkBudget* outer_;
};

// Graded-lexicographic comparison of exponent vectors: total degree first,
// then the first differing exponent. Returns <0, 0, >0.
int compare_grlex(std::span<const Exponent> a, std::span<const Exponent> b);

// Sparse Laurent polynomial over Coeff (Integer or Rational). Terms are kept
// in strictly decreasing graded-lex order with no zero coefficients, so equal
// polynomials have identical representations.
template <class Coeff>
class BasicLaurentPoly {
 public:
  BasicLaurentPoly() = default;
  explicit BasicLaurentPoly(std::size_t arity) : arity_(arity) {}

  static BasicLaurentPoly constant(std::size_t arity, Coeff c) {
    BasicLaurentPoly p(arity);
    if (c != 0) {
      p.exps_.assign(arity, 0);
      p.coeffs_.push_back(std::move(c));
    }
    return p;
  }

  static BasicLaurentPoly monomial(std::span<const Exponent> exps, Coeff c = Coeff(1)) {
    BasicLaurentPoly p(exps.size());
    if (c != 0) {
      p.exps_.assign(exps.begin(), exps.end());
      p.coeffs_.push_back(std::move(c));
    }
    return p;
  }

  static BasicLaurentPoly variable(std::size_t arity, std::size_t i, Exponent power = 1) {
    std::vector<Exponent> e(arity, 0);
    e.at(i) = power;
    return monomial(e);
  }

  // Builds a polynomial from unsorted terms; duplicates are combined.
  static BasicLaurentPoly from_terms(std::size_t arity, std::vector<std::pair<std::vector<Exponent>, Coeff>> terms) {
    for (const auto& t : terms)
      if (t.first.size() != arity) throw ArityMismatch("term arity mismatch");
    std::sort(terms.begin(), terms.end(),
              [](const auto& a, const auto& b) { return compare_grlex(a.first, b.first) > 0; });
    BasicLaurentPoly p(arity);
    for (auto& t : terms) {
      if (!p.coeffs_.empty() && compare_grlex(p.exponents(p.size() - 1), t.first) == 0) {
        p.coeffs_.back() += t.second;
        if (p.coeffs_.back() == 0) p.pop_back();
      } else if (t.second != 0) {
        p.push_back(t.first, std::move(t.second));
      }
    }
    return p;
  }

  std::size_t arity() const { return arity_; }
  std::size_t size() const { return coeffs_.size(); }
  bool is_zero() const { return coeffs_.empty(); }

  std::span<const Exponent> exponents(std::size_t term) const {
    return {exps_.data() + term * arity_, arity_};
  }
  const Coeff& coefficient(std::size_t term) const { return coeffs_[term]; }

  bool operator==(const BasicLaurentPoly& other) const = default;

  // Appends a term that must be strictly smaller than the current last term.
  void push_back(std::span<const Exponent> e, Coeff c) {
    exps_.insert(exps_.end(), e.begin(), e.end());
    coeffs_.push_back(std::move(c));
  }

  // Multiplies by the monomial x^shift (no reordering needed: grlex is a monomial order).
  BasicLaurentPoly shifted(std::span<const Exponent> shift) const {
    require_arity(shift.size());
    BasicLaurentPoly out = *this;
    for (std::size_t t = 0; t < size(); ++t)
      for (std::size_t v = 0; v < arity_; ++v) out.exps_[t * arity_ + v] = checked_add(out.exps_[t * arity_ + v], shift[v]);
    return out;
  }

  // Componentwise minimum exponent over all terms (zero vector for the zero polynomial).
  std::vector<Exponent> min_exponents() const {
    std::vector<Exponent> m(arity_, 0);
    for (std::size_t t = 0; t < size(); ++t)
      for (std::size_t v = 0; v < arity_; ++v) m[v] = t == 0 ? exps_[v] : std::min(m[v], exps_[t * arity_ + v]);
    return m;
  }

  void require_arity(std::size_t arity) const {
    if (arity != arity_) throw ArityMismatch("Laurent polynomial arity mismatch");
  }

 private:
  void pop_back() {
    coeffs_.pop_back();
    exps_.resize(exps_.size() - arity_);
  }

  std::size_t arity_ = 0;
  std::vector<Exponent> exps_;
  std::vector<Coeff> coeffs_;
};

using LaurentPoly = BasicLaurentPoly<Integer>;
using RationalLaurentPoly = BasicLaurentPoly<Rational>;

template <class C>
BasicLaurentPoly<C> add(const BasicLaurentPoly<C>& a, const BasicLaurentPoly<C>& b);
template <class C>
BasicLaurentPoly<C> sub(const BasicLaurentPoly<C>& a, const BasicLaurentPoly<C>& b);
template <class C>
BasicLaurentPoly<C> neg(const BasicLaurentPoly<C>& a);
template <class C>
BasicLaurentPoly<C> mul(const BasicLaurentPoly<C>& a, const BasicLaurentPoly<C>& b);
template <class C>
BasicLaurentPoly<C> pow(const BasicLaurentPoly<C>& a, std::uint64_t e);
template <class C>
BasicLaurentPoly<C> scale(const BasicLaurentPoly<C>& a, const C& c);

// Returns q with q * den == num, or throws NotDivisible. Both operands are
// shifted to ordinary polynomials and divided by leading-term elimination.
template <class C>
BasicLaurentPoly<C> exact_div(const BasicLaurentPoly<C>& num, const BasicLaurentPoly<C>& den);

inline LaurentPoly operator+(const LaurentPoly& a, const LaurentPoly& b) { return add(a, b); }
inline LaurentPoly operator-(const LaurentPoly& a, const LaurentPoly& b) { return sub(a, b); }
inline LaurentPoly operator*(const LaurentPoly& a, const LaurentPoly& b) { return mul(a, b); }

// d_i = -(minimum exponent of variable i), for the first `cluster_vars` variables.
using DenominatorVector = std::vector<std::int64_t>;
DenominatorVector denominator_vector(const LaurentPoly& p, std::size_t cluster_vars);

// Exact value at a strictly positive point.
Rational evaluate(const LaurentPoly& p, std::span<const Rational> point);
Rational evaluate(const RationalLaurentPoly& p, std::span<const Rational> point);

// All stored coefficients positive.
bool is_positive(const LaurentPoly& p);

// Replaces variables [keep, arity) by the given values; the result has arity `keep`.
RationalLaurentPoly substitute_tail(const LaurentPoly& p, std::size_t keep, std::span<const Rational> values);

RationalLaurentPoly to_rational(const LaurentPoly& p);

// Canonical total order on polynomials: term by term, monomial (grlex,
// larger first) then coefficient; a proper prefix sorts first.
int compare(const LaurentPoly& a, const LaurentPoly& b);

std::size_t hash_value(const LaurentPoly& p);

// [{"coeff": "<decimal>", "exp": [...]}, ...] in canonical order.
nlohmann::json to_json(const LaurentPoly& p);
LaurentPoly laurent_from_json(const nlohmann::json& j, std::size_t arity);

std::string to_string(const LaurentPoly& p, const std::vector<std::string>& names = {});
std::string to_string(const RationalLaurentPoly& p, const std::vector<std::string>& names = {});

}  // namespace clusterlab
