#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "clusterlab/laurent.hpp"
#include "clusterlab/matrix.hpp"
#include "clusterlab/semifield.hpp"

namespace clusterlab {

// Coordinates in the basis of simple roots (or coroots).
struct Root {
  Integer d1;
  Integer d2;
  bool operator==(const Root&) const = default;
  bool positive() const { return d1 >= 0 && d2 >= 0; }
};

Root operator+(const Root& a, const Root& b);
Root operator-(const Root& a, const Root& b);
Root operator*(const Integer& k, const Root& a);
std::string to_string(const Root& r);

using Mat2 = std::array<std::array<Integer, 2>, 2>;

Mat2 operator*(const Mat2& a, const Mat2& b);
Root operator*(const Mat2& a, const Root& r);
Mat2 identity2();

// {b, c} both zero or both positive, else invalid_argument.
void require_rank2_pair(long b, long c);

// 2, 3, 4, 6 for bc = 0..3; nullopt (infinite) for bc >= 4.
std::optional<std::size_t> coxeter_number(long b, long c);

struct Rank2System {
  long b = 0;
  long c = 0;
  std::optional<std::size_t> h;
  Mat2 s1, s2;          // on the root lattice
  Mat2 s1_co, s2_co;    // on the coroot lattice

  static Rank2System make(long b, long c);
  bool finite() const { return h.has_value(); }
};

// Alternating product of length m starting with s_which.
Mat2 weyl_word_action(const Rank2System& sys, int which, std::size_t m, bool coroot = false);

// <m>: 1 for odd m, 2 for even m.
inline int parity_index(long m) { return (m % 2 == 0) ? 2 : 1; }

Root simple_root(int i);

// delta(m) for lo <= m <= hi by the clamped recurrence from delta(1), delta(2).
struct DenominatorSequence {
  long first = 1;
  std::vector<Root> roots;
  const Root& at(long m) const { return roots.at(static_cast<std::size_t>(m - first)); }
};
DenominatorSequence denominator_sequence(long b, long c, long lo, long hi);

// delta(m) from the Weyl-word formulas; finite types are reduced mod h + 2.
Root weyl_denominator(const Rank2System& sys, long m);

// Positive real roots: the orbit of the simple roots under the group generated
// by s1, s2, restricted to the positive cone. In the infinite case the orbit is
// truncated at roots with d1 + d2 <= max_height.
std::vector<Root> positive_roots(const Rank2System& sys, const Integer& max_height = 0);

// Initial exchange matrix for the cluster (y1, y2): [[0, -b], [c, 0]].
ExchangeMatrix rank2_initial_matrix(long b, long c);

// y_m for lo <= m <= hi (lo <= 1, hi >= 2) expanded in (y1, y2), trivial coefficients.
std::map<long, LaurentPoly> rank2_cluster_variables(long b, long c, long lo, long hi);

struct DenominatorRow {
  long m = 0;
  Root recurrence;
  Root weyl;
  Root engine;
  bool agree() const { return recurrence == weyl && weyl == engine; }
};

struct DenominatorReport {
  long b = 0;
  long c = 0;
  std::optional<std::size_t> h;
  std::vector<DenominatorRow> rows;
  std::size_t mismatches = 0;
  bool periodic = true;   // finite: delta(m + h + 2) = delta(m) inside the window
  bool distinct = true;   // infinite: all engine denominators pairwise distinct
  bool ok() const { return mismatches == 0 && (h ? periodic : distinct); }
};

DenominatorReport verify_denominator_theorem(long b, long c, long lo, long hi);

nlohmann::json to_json(const DenominatorReport& r);
std::string to_table(const DenominatorReport& r);

// u_1..u_length with u_{m+1} = (1 + u_m)^{c or b} / u_{m-1}, exponent c for m odd.
std::vector<SemifieldElem> u_sequence(const SemifieldElem& u1, const SemifieldElem& u2, long b, long c,
                                      std::size_t length);

struct PeriodicityReport {
  long b = 0;
  long c = 0;
  std::optional<std::size_t> h;
  std::size_t trials = 0;
  std::size_t failures = 0;          // points with u_{h+3} != u_1 or u_{h+4} != u_2
  bool engine_periodic = false;      // y_{h+3} = y_1 and y_{h+4} = y_2 (finite case)
  std::optional<std::size_t> period; // smallest period <= window found at the first point
  std::size_t window = 0;
  bool ok() const { return h ? failures == 0 && engine_periodic && period == *h + 2 : !period.has_value(); }
};

// Random points have numerators and denominators in [1, 1000].
PeriodicityReport verify_periodicity(long b, long c, std::size_t trials, std::uint64_t rng_seed = 1,
                                     std::size_t window = 20);

// Exponents of q_{k+2}, ..., q_{k+h} in r_k (finite case only).
std::vector<Integer> r_from_q(long b, long c, long k);

// Exponent vector of r_k over Trop(q_1..q_{h+2}) with q periodic mod h + 2.
Tropical tropical_r(long b, long c, long k);
Tropical tropical_q(long b, long c, long m);

struct CoefficientIdentityReport {
  long b = 0;
  long c = 0;
  std::size_t rational_checks = 0;
  std::size_t rational_failures = 0;   // r_from_q or chain identities at random rational points
  std::size_t tropical_checks = 0;
  std::size_t tropical_failures = 0;   // chains and q + r = 1 in Trop(q_1..q_{h+2})
  bool ok() const { return rational_failures == 0 && tropical_failures == 0; }
};

CoefficientIdentityReport verify_coefficient_identities(long b, long c, std::size_t trials, std::uint64_t rng_seed = 1);

// Geometric-type matrix over Trop(q_1..q_{h+2}) realizing the normalized
// pattern with r_m = prod q^{r_from_q}: principal part [[0, -b], [c, 0]] and
// frozen rows encoding u(t_1) = (q_2/r_2, r_1/q_1). Gr(2,5) for b = c = 1.
ExchangeMatrix rank2_geometric_matrix(long b, long c);

}  // namespace clusterlab
