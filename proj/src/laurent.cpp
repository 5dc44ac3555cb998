#include "clusterlab/laurent.hpp"

#include <optional>
#include <sstream>

namespace clusterlab {

int compare_grlex(std::span<const Exponent> a, std::span<const Exponent> b) {
  std::int64_t da = 0;
  std::int64_t db = 0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    da += a[i];
    db += b[i];
  }
  if (da != db) return da < db ? -1 : 1;
  for (std::size_t i = 0; i < a.size(); ++i)
    if (a[i] != b[i]) return a[i] < b[i] ? -1 : 1;
  return 0;
}

namespace {
thread_local WorkBudget* current_budget = nullptr;
}  // namespace

WorkBudget::WorkBudget(std::uint64_t limit) : limit_(limit), outer_(current_budget) { current_budget = this; }

WorkBudget::~WorkBudget() { current_budget = outer_; }

void WorkBudget::charge(std::uint64_t ops) {
  WorkBudget* b = current_budget;
  if (b == nullptr) return;
  b->used_ += ops;
  if (b->used_ > b->limit_) throw WorkBudgetExceeded("polynomial work budget exceeded");
}

namespace {

bool divides(const Integer& d, const Integer& c) { return mpz_divisible_p(c.get_mpz_t(), d.get_mpz_t()) != 0; }
bool divides(const Rational&, const Rational&) { return true; }

Integer exact_quotient(const Integer& c, const Integer& d) {
  Integer q;
  mpz_divexact(q.get_mpz_t(), c.get_mpz_t(), d.get_mpz_t());
  return q;
}
Rational exact_quotient(const Rational& c, const Rational& d) { return c / d; }

// Max-heap of row indices keyed by the exponent rows stored in `keys`.
class RowHeap {
 public:
  RowHeap(const std::vector<Exponent>& keys, std::size_t arity) : keys_(keys), arity_(arity) {}

  bool empty() const { return heap_.empty(); }
  std::size_t top() const { return heap_.front(); }
  std::span<const Exponent> top_key() const { return key(heap_.front()); }

  void push(std::size_t row) {
    heap_.push_back(row);
    std::push_heap(heap_.begin(), heap_.end(), less());
  }
  std::size_t pop() {
    std::pop_heap(heap_.begin(), heap_.end(), less());
    const std::size_t row = heap_.back();
    heap_.pop_back();
    return row;
  }

 private:
  std::span<const Exponent> key(std::size_t row) const { return {keys_.data() + row * arity_, arity_}; }
  struct Less {
    const RowHeap* heap;
    bool operator()(std::size_t x, std::size_t y) const { return compare_grlex(heap->key(x), heap->key(y)) < 0; }
  };
  Less less() const { return Less{this}; }

  const std::vector<Exponent>& keys_;
  std::size_t arity_;
  std::vector<std::size_t> heap_;
};

void add_rows(std::span<const Exponent> a, std::span<const Exponent> b, Exponent* out) {
  for (std::size_t v = 0; v < a.size(); ++v) out[v] = checked_add(a[v], b[v]);
}

bool same(std::span<const Exponent> a, std::span<const Exponent> b) { return std::equal(a.begin(), a.end(), b.begin()); }

// Ordinary polynomial division with zero remainder required.
template <class C>
BasicLaurentPoly<C> divide_generic(const BasicLaurentPoly<C>& f, const BasicLaurentPoly<C>& g) {
  const std::size_t n = f.arity();
  BasicLaurentPoly<C> q(n);
  const auto lead = g.exponents(0);
  const C& lc = g.coefficient(0);
  std::vector<Exponent> keys;
  std::vector<std::size_t> next;
  RowHeap heap(keys, n);
  std::vector<Exponent> m(n);
  std::vector<Exponent> qexp(n);
  std::size_t fi = 0;
  C c;
  while (fi < f.size() || !heap.empty()) {
    if (fi < f.size() && (heap.empty() || compare_grlex(f.exponents(fi), heap.top_key()) >= 0)) {
      const auto e = f.exponents(fi);
      std::copy(e.begin(), e.end(), m.begin());
    } else {
      const auto e = heap.top_key();
      std::copy(e.begin(), e.end(), m.begin());
    }
    c = 0;
    if (fi < f.size() && same(f.exponents(fi), m)) c = f.coefficient(fi++);
    while (!heap.empty() && same(heap.top_key(), m)) {
      const std::size_t k = heap.pop();
      WorkBudget::charge(1);
      c -= q.coefficient(k) * g.coefficient(next[k]);
      if (++next[k] < g.size()) {
        add_rows(q.exponents(k), g.exponents(next[k]), keys.data() + k * n);
        heap.push(k);
      }
    }
    if (c == 0) continue;
    for (std::size_t v = 0; v < n; ++v) {
      if (m[v] < lead[v]) throw NotDivisible("nonzero remainder: leading monomial not divisible");
      qexp[v] = m[v] - lead[v];
    }
    if (!divides(lc, c)) throw NotDivisible("nonzero remainder: coefficient not divisible");
    q.push_back(qexp, exact_quotient(c, lc));
    const std::size_t k = q.size() - 1;
    next.push_back(1);
    keys.resize(keys.size() + n);
    if (g.size() > 1) {
      add_rows(q.exponents(k), g.exponents(1), keys.data() + k * n);
      heap.push(k);
    }
  }
  return q;
}

void addmul(Integer& c, const Integer& a, const Integer& b) { mpz_addmul(c.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t()); }
void addmul(Rational& c, const Rational& a, const Rational& b) { c += a * b; }
void submul(Integer& c, const Integer& a, const Integer& b) { mpz_submul(c.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t()); }
void submul(Rational& c, const Rational& a, const Rational& b) { c -= a * b; }

int bits_for(std::uint64_t range) { return range == 0 ? 0 : 64 - __builtin_clzll(range); }

// Exponent vectors shifted by an offset and packed into one word whose
// integer order is graded-lex order: the shifted total degree sits in the top
// field, then one field per variable with the first variable most significant.
// Fields never carry as long as every shifted exponent stays within `range`.
class Packing {
 public:
  static std::optional<Packing> make(const std::vector<std::uint64_t>& range) {
    Packing p;
    const std::size_t n = range.size();
    p.shift_.assign(n, 0);
    p.mask_.assign(n, 0);
    int used = 0;
    std::uint64_t degree = 0;
    for (std::size_t v = n; v-- > 0;) {
      const int w = bits_for(range[v]);
      p.shift_[v] = used;
      p.mask_[v] = w == 0 ? 0 : (w == 64 ? ~0ULL : ((1ULL << w) - 1));
      used += w;
      if (range[v] > (1ULL << 40) || degree + range[v] < degree) return std::nullopt;
      degree += range[v];
    }
    p.degree_shift_ = used;
    if (used + bits_for(degree) > 64) return std::nullopt;
    return p;
  }

  std::uint64_t pack(std::span<const Exponent> e, std::span<const Exponent> offset) const {
    std::uint64_t key = 0;
    std::uint64_t degree = 0;
    for (std::size_t v = 0; v < e.size(); ++v) {
      const auto f = static_cast<std::uint64_t>(static_cast<std::int64_t>(e[v]) - offset[v]);
      key |= f << shift_[v];
      degree += f;
    }
    return degree_shift_ == 64 ? key : key | (degree << degree_shift_);
  }

  void unpack(std::uint64_t key, std::span<const Exponent> offset, Exponent* out) const {
    for (std::size_t v = 0; v < shift_.size(); ++v)
      out[v] = static_cast<Exponent>(static_cast<std::int64_t>((key >> shift_[v]) & mask_[v]) + offset[v]);
  }

 private:
  std::vector<int> shift_;
  std::vector<std::uint64_t> mask_;
  int degree_shift_ = 0;
};

struct KeyRow {
  std::uint64_t key;
  std::size_t row;
  bool operator<(const KeyRow& o) const { return key < o.key; }
};

std::vector<Exponent> max_exponents(const auto& p) {
  std::vector<Exponent> m(p.arity(), 0);
  for (std::size_t t = 0; t < p.size(); ++t)
    for (std::size_t v = 0; v < p.arity(); ++v) m[v] = t == 0 ? p.exponents(t)[v] : std::max(m[v], p.exponents(t)[v]);
  return m;
}

// Johnson's heap multiplication on packed keys; `a` is the shorter operand.
template <class C>
std::optional<BasicLaurentPoly<C>> mul_packed(const BasicLaurentPoly<C>& a, const BasicLaurentPoly<C>& b) {
  const std::size_t n = a.arity();
  const auto amin = a.min_exponents();
  const auto bmin = b.min_exponents();
  const auto amax = max_exponents(a);
  const auto bmax = max_exponents(b);
  std::vector<std::uint64_t> range(n);
  std::vector<Exponent> offset(n);
  for (std::size_t v = 0; v < n; ++v) {
    range[v] = static_cast<std::uint64_t>(static_cast<std::int64_t>(amax[v]) - amin[v] + bmax[v] - bmin[v]);
    offset[v] = checked_add(amin[v], bmin[v]);
  }
  const auto packing = Packing::make(range);
  if (!packing) return std::nullopt;
  std::vector<std::uint64_t> ka(a.size());
  std::vector<std::uint64_t> kb(b.size());
  for (std::size_t i = 0; i < a.size(); ++i) ka[i] = packing->pack(a.exponents(i), amin);
  for (std::size_t j = 0; j < b.size(); ++j) kb[j] = packing->pack(b.exponents(j), bmin);
  BasicLaurentPoly<C> out(n);
  std::vector<std::size_t> next(a.size(), 0);
  std::vector<KeyRow> heap;
  heap.reserve(a.size());
  heap.push_back({ka[0] + kb[0], 0});
  std::vector<Exponent> e(n);
  C c;
  while (!heap.empty()) {
    const std::uint64_t m = heap.front().key;
    c = 0;
    while (!heap.empty() && heap.front().key == m) {
      std::pop_heap(heap.begin(), heap.end());
      const std::size_t i = heap.back().row;
      heap.pop_back();
      WorkBudget::charge(1);
      addmul(c, a.coefficient(i), b.coefficient(next[i]));
      if (next[i] == 0 && i + 1 < a.size()) {
        heap.push_back({ka[i + 1] + kb[0], i + 1});
        std::push_heap(heap.begin(), heap.end());
      }
      if (++next[i] < b.size()) {
        heap.push_back({ka[i] + kb[next[i]], i});
        std::push_heap(heap.begin(), heap.end());
      }
    }
    if (c != 0) {
      packing->unpack(m, offset, e.data());
      out.push_back(e, c);
    }
  }
  return out;
}

// Division of ordinary polynomials on packed keys. Every quotient term of an
// exact division is bounded by maxdeg(f) - maxdeg(g) per variable and in
// total degree, which keeps all heap keys inside the fields of f.
template <class C>
std::optional<BasicLaurentPoly<C>> divide_packed(const BasicLaurentPoly<C>& f, const BasicLaurentPoly<C>& g) {
  const std::size_t n = f.arity();
  const auto fmax = max_exponents(f);
  const auto gmax = max_exponents(g);
  std::vector<std::uint64_t> range(n);
  std::vector<Exponent> qmax(n);
  std::int64_t fdeg = 0;
  std::int64_t gdeg = 0;
  for (std::size_t t = 0; t < f.size(); ++t) {
    std::int64_t d = 0;
    for (Exponent x : f.exponents(t)) d += x;
    fdeg = std::max(fdeg, d);
  }
  for (std::size_t t = 0; t < g.size(); ++t) {
    std::int64_t d = 0;
    for (Exponent x : g.exponents(t)) d += x;
    gdeg = std::max(gdeg, d);
  }
  for (std::size_t v = 0; v < n; ++v) {
    if (gmax[v] > fmax[v]) throw NotDivisible("nonzero remainder: divisor degree exceeds dividend degree");
    range[v] = static_cast<std::uint64_t>(fmax[v]);
    qmax[v] = fmax[v] - gmax[v];
  }
  if (gdeg > fdeg) throw NotDivisible("nonzero remainder: divisor degree exceeds dividend degree");
  const std::int64_t qdeg = fdeg - gdeg;
  const auto packing = Packing::make(range);
  if (!packing) return std::nullopt;
  const std::vector<Exponent> zero(n, 0);
  std::vector<std::uint64_t> kf(f.size());
  std::vector<std::uint64_t> kg(g.size());
  for (std::size_t t = 0; t < f.size(); ++t) kf[t] = packing->pack(f.exponents(t), zero);
  for (std::size_t t = 0; t < g.size(); ++t) kg[t] = packing->pack(g.exponents(t), zero);
  const auto lead = g.exponents(0);
  const C& lc = g.coefficient(0);
  BasicLaurentPoly<C> q(n);
  std::vector<std::uint64_t> kq;
  std::vector<std::size_t> next;
  std::vector<KeyRow> heap;
  std::vector<Exponent> m(n);
  std::vector<Exponent> qexp(n);
  std::size_t fi = 0;
  C c;
  while (fi < f.size() || !heap.empty()) {
    std::uint64_t key;
    if (fi < f.size() && (heap.empty() || kf[fi] >= heap.front().key))
      key = kf[fi];
    else
      key = heap.front().key;
    c = 0;
    if (fi < f.size() && kf[fi] == key) c = f.coefficient(fi++);
    while (!heap.empty() && heap.front().key == key) {
      std::pop_heap(heap.begin(), heap.end());
      const std::size_t k = heap.back().row;
      heap.pop_back();
      WorkBudget::charge(1);
      submul(c, q.coefficient(k), g.coefficient(next[k]));
      if (++next[k] < g.size()) {
        heap.push_back({kq[k] + kg[next[k]], k});
        std::push_heap(heap.begin(), heap.end());
      }
    }
    if (c == 0) continue;
    packing->unpack(key, zero, m.data());
    std::int64_t d = 0;
    for (std::size_t v = 0; v < n; ++v) {
      if (m[v] < lead[v]) throw NotDivisible("nonzero remainder: leading monomial not divisible");
      qexp[v] = m[v] - lead[v];
      if (qexp[v] > qmax[v]) throw NotDivisible("nonzero remainder: quotient degree bound exceeded");
      d += qexp[v];
    }
    if (d > qdeg) throw NotDivisible("nonzero remainder: quotient degree bound exceeded");
    if (!divides(lc, c)) throw NotDivisible("nonzero remainder: coefficient not divisible");
    q.push_back(qexp, exact_quotient(c, lc));
    const std::size_t k = q.size() - 1;
    kq.push_back(packing->pack(qexp, zero));
    next.push_back(1);
    if (g.size() > 1) {
      heap.push_back({kq[k] + kg[1], k});
      std::push_heap(heap.begin(), heap.end());
    }
  }
  return q;
}

template <class C>
BasicLaurentPoly<C> divide_polynomials(const BasicLaurentPoly<C>& f, const BasicLaurentPoly<C>& g) {
  if (auto q = divide_packed(f, g)) return std::move(*q);
  return divide_generic(f, g);
}

template <class C>
std::string render(const BasicLaurentPoly<C>& p, const std::vector<std::string>& names) {
  if (p.is_zero()) return "0";
  std::ostringstream out;
  for (std::size_t t = 0; t < p.size(); ++t) {
    C c = p.coefficient(t);
    if (t > 0) {
      out << (c < 0 ? " - " : " + ");
      if (c < 0) c = -c;
    } else if (c < 0) {
      out << '-';
      c = -c;
    }
    std::ostringstream mono;
    bool any = false;
    const auto e = p.exponents(t);
    for (std::size_t v = 0; v < e.size(); ++v) {
      if (e[v] == 0) continue;
      if (any) mono << '*';
      mono << (v < names.size() ? names[v] : "x" + std::to_string(v + 1));
      if (e[v] != 1) mono << '^' << e[v];
      any = true;
    }
    if (!any)
      out << c.get_str();
    else if (c == 1)
      out << mono.str();
    else
      out << c.get_str() << '*' << mono.str();
  }
  return out.str();
}

template <class C>
Rational evaluate_impl(const BasicLaurentPoly<C>& p, std::span<const Rational> point) {
  p.require_arity(point.size());
  for (const auto& x : point)
    if (x <= 0) throw std::invalid_argument("evaluation point must be strictly positive");
  Rational total = 0;
  Rational term;
  Rational power;
  for (std::size_t t = 0; t < p.size(); ++t) {
    term = p.coefficient(t);
    const auto e = p.exponents(t);
    for (std::size_t v = 0; v < e.size(); ++v) {
      if (e[v] == 0) continue;
      const unsigned long k = static_cast<unsigned long>(e[v] < 0 ? -static_cast<std::int64_t>(e[v]) : e[v]);
      mpz_pow_ui(power.get_num_mpz_t(), point[v].get_num_mpz_t(), k);
      mpz_pow_ui(power.get_den_mpz_t(), point[v].get_den_mpz_t(), k);
      if (e[v] < 0) mpq_inv(power.get_mpq_t(), power.get_mpq_t());
      term *= power;
    }
    total += term;
  }
  return total;
}

}  // namespace

template <class C>
BasicLaurentPoly<C> add(const BasicLaurentPoly<C>& a, const BasicLaurentPoly<C>& b) {
  a.require_arity(b.arity());
  BasicLaurentPoly<C> out(a.arity());
  std::size_t i = 0;
  std::size_t j = 0;
  while (i < a.size() || j < b.size()) {
    const int cmp = i == a.size() ? -1 : j == b.size() ? 1 : compare_grlex(a.exponents(i), b.exponents(j));
    if (cmp > 0) {
      out.push_back(a.exponents(i), a.coefficient(i));
      ++i;
    } else if (cmp < 0) {
      out.push_back(b.exponents(j), b.coefficient(j));
      ++j;
    } else {
      C c = a.coefficient(i) + b.coefficient(j);
      if (c != 0) out.push_back(a.exponents(i), std::move(c));
      ++i;
      ++j;
    }
  }
  return out;
}

template <class C>
BasicLaurentPoly<C> neg(const BasicLaurentPoly<C>& a) {
  BasicLaurentPoly<C> out(a.arity());
  for (std::size_t t = 0; t < a.size(); ++t) out.push_back(a.exponents(t), C(-a.coefficient(t)));
  return out;
}

template <class C>
BasicLaurentPoly<C> sub(const BasicLaurentPoly<C>& a, const BasicLaurentPoly<C>& b) {
  return add(a, neg(b));
}

template <class C>
BasicLaurentPoly<C> scale(const BasicLaurentPoly<C>& a, const C& c) {
  BasicLaurentPoly<C> out(a.arity());
  if (c == 0) return out;
  for (std::size_t t = 0; t < a.size(); ++t) out.push_back(a.exponents(t), C(a.coefficient(t) * c));
  return out;
}

template <class C>
BasicLaurentPoly<C> mul(const BasicLaurentPoly<C>& x, const BasicLaurentPoly<C>& y) {
  x.require_arity(y.arity());
  const std::size_t n = x.arity();
  BasicLaurentPoly<C> out(n);
  if (x.is_zero() || y.is_zero()) return out;
  const auto& a = x.size() <= y.size() ? x : y;
  const auto& b = x.size() <= y.size() ? y : x;
  if (a.size() == 1) {
    WorkBudget::charge(b.size());
    for (std::size_t j = 0; j < b.size(); ++j) {
      std::vector<Exponent> e(n);
      add_rows(a.exponents(0), b.exponents(j), e.data());
      out.push_back(e, C(a.coefficient(0) * b.coefficient(j)));
    }
    return out;
  }
  if (auto packed = mul_packed(a, b)) return std::move(*packed);
  // Johnson's heap multiplication: one active product per row of `a`, row
  // i + 1 enters once row i has consumed its leading term.
  std::vector<Exponent> keys(a.size() * n);
  std::vector<std::size_t> next(a.size(), 0);
  RowHeap heap(keys, n);
  add_rows(a.exponents(0), b.exponents(0), keys.data());
  heap.push(0);
  std::vector<Exponent> m(n);
  C c;
  while (!heap.empty()) {
    const auto top = heap.top_key();
    std::copy(top.begin(), top.end(), m.begin());
    c = 0;
    while (!heap.empty() && same(heap.top_key(), m)) {
      const std::size_t i = heap.pop();
      WorkBudget::charge(1);
      c += a.coefficient(i) * b.coefficient(next[i]);
      if (next[i] == 0 && i + 1 < a.size()) {
        add_rows(a.exponents(i + 1), b.exponents(0), keys.data() + (i + 1) * n);
        heap.push(i + 1);
      }
      if (++next[i] < b.size()) {
        add_rows(a.exponents(i), b.exponents(next[i]), keys.data() + i * n);
        heap.push(i);
      }
    }
    if (c != 0) out.push_back(m, c);
  }
  return out;
}

template <class C>
BasicLaurentPoly<C> pow(const BasicLaurentPoly<C>& a, std::uint64_t e) {
  BasicLaurentPoly<C> result = BasicLaurentPoly<C>::constant(a.arity(), C(1));
  BasicLaurentPoly<C> base = a;
  while (e > 0) {
    if (e & 1U) result = mul(result, base);
    e >>= 1U;
    if (e > 0) base = mul(base, base);
  }
  return result;
}

template <class C>
BasicLaurentPoly<C> exact_div(const BasicLaurentPoly<C>& num, const BasicLaurentPoly<C>& den) {
  num.require_arity(den.arity());
  if (den.is_zero()) throw std::domain_error("division by the zero polynomial");
  if (num.is_zero()) return BasicLaurentPoly<C>(num.arity());
  std::vector<Exponent> num_shift = num.min_exponents();
  std::vector<Exponent> den_shift = den.min_exponents();
  std::vector<Exponent> back(num.arity());
  for (std::size_t v = 0; v < num.arity(); ++v) {
    back[v] = checked_sub(num_shift[v], den_shift[v]);
    num_shift[v] = checked_sub(0, num_shift[v]);
    den_shift[v] = checked_sub(0, den_shift[v]);
  }
  const auto q = divide_polynomials(num.shifted(num_shift), den.shifted(den_shift));
  return q.shifted(back);
}

template LaurentPoly add(const LaurentPoly&, const LaurentPoly&);
template LaurentPoly sub(const LaurentPoly&, const LaurentPoly&);
template LaurentPoly neg(const LaurentPoly&);
template LaurentPoly mul(const LaurentPoly&, const LaurentPoly&);
template LaurentPoly pow(const LaurentPoly&, std::uint64_t);
template LaurentPoly scale(const LaurentPoly&, const Integer&);
template LaurentPoly exact_div(const LaurentPoly&, const LaurentPoly&);
template RationalLaurentPoly add(const RationalLaurentPoly&, const RationalLaurentPoly&);
template RationalLaurentPoly sub(const RationalLaurentPoly&, const RationalLaurentPoly&);
template RationalLaurentPoly neg(const RationalLaurentPoly&);
template RationalLaurentPoly mul(const RationalLaurentPoly&, const RationalLaurentPoly&);
template RationalLaurentPoly pow(const RationalLaurentPoly&, std::uint64_t);
template RationalLaurentPoly scale(const RationalLaurentPoly&, const Rational&);
template RationalLaurentPoly exact_div(const RationalLaurentPoly&, const RationalLaurentPoly&);

DenominatorVector denominator_vector(const LaurentPoly& p, std::size_t cluster_vars) {
  if (p.is_zero()) throw std::invalid_argument("denominator vector of the zero polynomial");
  if (cluster_vars > p.arity()) throw ArityMismatch("more cluster variables than polynomial variables");
  const auto m = p.min_exponents();
  DenominatorVector d(cluster_vars);
  for (std::size_t v = 0; v < cluster_vars; ++v) d[v] = -static_cast<std::int64_t>(m[v]);
  return d;
}

Rational evaluate(const LaurentPoly& p, std::span<const Rational> point) { return evaluate_impl(p, point); }
Rational evaluate(const RationalLaurentPoly& p, std::span<const Rational> point) { return evaluate_impl(p, point); }

bool is_positive(const LaurentPoly& p) {
  for (std::size_t t = 0; t < p.size(); ++t)
    if (p.coefficient(t) <= 0) return false;
  return true;
}

RationalLaurentPoly to_rational(const LaurentPoly& p) {
  RationalLaurentPoly out(p.arity());
  for (std::size_t t = 0; t < p.size(); ++t) out.push_back(p.exponents(t), Rational(p.coefficient(t)));
  return out;
}

RationalLaurentPoly substitute_tail(const LaurentPoly& p, std::size_t keep, std::span<const Rational> values) {
  if (keep + values.size() != p.arity()) throw ArityMismatch("substitution values must cover the tail variables");
  for (const auto& v : values)
    if (v <= 0) throw std::invalid_argument("substituted values must be strictly positive");
  std::vector<std::pair<std::vector<Exponent>, Rational>> terms;
  terms.reserve(p.size());
  for (std::size_t t = 0; t < p.size(); ++t) {
    const auto e = p.exponents(t);
    std::vector<Exponent> head(e.begin(), e.begin() + static_cast<std::ptrdiff_t>(keep));
    std::vector<Exponent> tail(e.begin() + static_cast<std::ptrdiff_t>(keep), e.end());
    const auto tail_mono = LaurentPoly::monomial(tail, p.coefficient(t));
    terms.emplace_back(std::move(head), evaluate(tail_mono, values));
  }
  return RationalLaurentPoly::from_terms(keep, std::move(terms));
}

int compare(const LaurentPoly& a, const LaurentPoly& b) {
  a.require_arity(b.arity());
  const std::size_t common = std::min(a.size(), b.size());
  for (std::size_t t = 0; t < common; ++t) {
    if (const int c = compare_grlex(a.exponents(t), b.exponents(t)); c != 0) return c;
    if (const int c = cmp(a.coefficient(t), b.coefficient(t)); c != 0) return c < 0 ? -1 : 1;
  }
  if (a.size() == b.size()) return 0;
  return a.size() < b.size() ? -1 : 1;
}

std::size_t hash_value(const LaurentPoly& p) {
  std::uint64_t h = 0xcbf29ce484222325ULL ^ p.arity();
  auto mix = [&h](std::uint64_t v) {
    h ^= v + 0x9E3779B97F4A7C15ULL + (h << 6) + (h >> 2);
  };
  for (std::size_t t = 0; t < p.size(); ++t) {
    for (Exponent e : p.exponents(t)) mix(static_cast<std::uint64_t>(static_cast<std::uint32_t>(e)));
    const mpz_srcptr z = p.coefficient(t).get_mpz_t();
    mix(static_cast<std::uint64_t>(mpz_size(z)) * static_cast<std::uint64_t>(mpz_sgn(z) + 2));
    mix(mpz_getlimbn(z, 0));
  }
  return static_cast<std::size_t>(h);
}

nlohmann::json to_json(const LaurentPoly& p) {
  nlohmann::json out = nlohmann::json::array();
  for (std::size_t t = 0; t < p.size(); ++t) {
    const auto e = p.exponents(t);
    out.push_back({{"coeff", p.coefficient(t).get_str()}, {"exp", std::vector<Exponent>(e.begin(), e.end())}});
  }
  return out;
}

LaurentPoly laurent_from_json(const nlohmann::json& j, std::size_t arity) {
  std::vector<std::pair<std::vector<Exponent>, Integer>> terms;
  for (const auto& term : j) {
    auto e = term.at("exp").get<std::vector<Exponent>>();
    if (e.size() != arity) throw ArityMismatch("term-list exponent length does not match arity");
    terms.emplace_back(std::move(e), Integer(term.at("coeff").get<std::string>()));
  }
  return LaurentPoly::from_terms(arity, std::move(terms));
}

std::string to_string(const LaurentPoly& p, const std::vector<std::string>& names) { return render(p, names); }
std::string to_string(const RationalLaurentPoly& p, const std::vector<std::string>& names) { return render(p, names); }

}  // namespace clusterlab
