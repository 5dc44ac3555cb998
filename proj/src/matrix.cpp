#include "clusterlab/matrix.hpp"

#include <algorithm>
#include <deque>
#include <sstream>
#include <stdexcept>

namespace clusterlab {

IntMatrix::IntMatrix(std::initializer_list<std::initializer_list<long>> rows)
    : rows_(rows.size()), cols_(rows.size() ? rows.begin()->size() : 0) {
  data_.reserve(rows_ * cols_);
  for (const auto& row : rows) {
    if (row.size() != cols_) throw std::invalid_argument("ragged matrix literal");
    for (long v : row) data_.emplace_back(v);
  }
}

std::string IntMatrix::to_string() const {
  std::ostringstream out;
  out << '[';
  for (std::size_t i = 0; i < rows_; ++i) {
    out << (i ? ",[" : "[");
    for (std::size_t j = 0; j < cols_; ++j) out << (j ? "," : "") << (*this)(i, j).get_str();
    out << ']';
  }
  out << ']';
  return out.str();
}

ExchangeMatrix::ExchangeMatrix(std::size_t n, std::size_t frozen, IntMatrix entries)
    : n_(n), frozen_(frozen), entries_(std::move(entries)) {
  if (n_ == 0) throw std::invalid_argument("exchange matrix needs at least one exchangeable index");
  if (entries_.rows() != n_ + frozen_ || entries_.cols() != n_)
    throw std::invalid_argument("exchange matrix must have n + frozen rows of n entries");
}

ExchangeMatrix ExchangeMatrix::square(std::initializer_list<std::initializer_list<long>> rows) {
  IntMatrix m(rows);
  const std::size_t n = m.rows();
  return ExchangeMatrix(n, 0, std::move(m));
}

ExchangeMatrix ExchangeMatrix::from_rows(std::size_t frozen, const std::vector<std::vector<long>>& rows) {
  if (rows.size() <= frozen) throw std::invalid_argument("too few rows");
  const std::size_t n = rows.size() - frozen;
  IntMatrix m(rows.size(), n);
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (rows[i].size() != n) throw std::invalid_argument("each row must have n entries");
    for (std::size_t j = 0; j < n; ++j) m(i, j) = rows[i][j];
  }
  return ExchangeMatrix(n, frozen, std::move(m));
}

ExchangeMatrix ExchangeMatrix::principal() const {
  IntMatrix m(n_, n_);
  for (std::size_t i = 0; i < n_; ++i)
    for (std::size_t j = 0; j < n_; ++j) m(i, j) = entries_(i, j);
  return ExchangeMatrix(n_, 0, std::move(m));
}

bool is_sign_skew_symmetric(const ExchangeMatrix& b) {
  const std::size_t n = b.rank();
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i; j < n; ++j) {
      const int s1 = sgn(b(i, j));
      const int s2 = sgn(b(j, i));
      if (s1 == 0 && s2 == 0) continue;
      if (s1 * s2 >= 0) return false;
    }
  }
  return true;
}

bool is_skew_symmetric(const ExchangeMatrix& b) {
  for (std::size_t i = 0; i < b.rank(); ++i)
    for (std::size_t j = 0; j < b.rank(); ++j)
      if (b(i, j) != -b(j, i)) return false;
  return true;
}

bool symmetrizes(const SkewSymmetrizer& d, const ExchangeMatrix& b) {
  if (d.d.size() != b.rank()) return false;
  for (std::size_t i = 0; i < b.rank(); ++i) {
    if (d.d[i] <= 0) return false;
    for (std::size_t j = 0; j < b.rank(); ++j)
      if (d.d[i] * b(i, j) != -(d.d[j] * b(j, i))) return false;
  }
  return true;
}

std::optional<SkewSymmetrizer> find_skew_symmetrizer(const ExchangeMatrix& b) {
  const std::size_t n = b.rank();
  std::vector<Rational> ratio(n, Rational(0));
  std::vector<bool> seen(n, false);
  std::vector<std::size_t> component(n);
  for (std::size_t root = 0; root < n; ++root) {
    if (seen[root]) continue;
    seen[root] = true;
    component[root] = root;
    ratio[root] = 1;
    std::deque<std::size_t> queue{root};
    while (!queue.empty()) {
      const std::size_t i = queue.front();
      queue.pop_front();
      for (std::size_t j = 0; j < n; ++j) {
        if (j == i || (b(i, j) == 0 && b(j, i) == 0)) continue;
        // d_i b_ij = -d_j b_ji, so both must be nonzero with opposite signs.
        if (b(i, j) == 0 || b(j, i) == 0 || sgn(b(i, j)) == sgn(b(j, i))) return std::nullopt;
        Rational step(Integer(-b(i, j)), b(j, i));
        step.canonicalize();
        const Rational dj = ratio[i] * step;
        if (!seen[j]) {
          seen[j] = true;
          component[j] = root;
          ratio[j] = dj;
          queue.push_back(j);
        } else if (ratio[j] != dj) {
          return std::nullopt;
        }
      }
    }
  }
  // Each component is scaled separately to coprime positive integers.
  SkewSymmetrizer out;
  out.d.assign(n, Integer(0));
  for (std::size_t c = 0; c < n; ++c) {
    if (component[c] != c) continue;
    Integer common_den = 1;
    for (std::size_t i = 0; i < n; ++i)
      if (component[i] == c) mpz_lcm(common_den.get_mpz_t(), common_den.get_mpz_t(), ratio[i].get_den_mpz_t());
    Integer g = 0;
    for (std::size_t i = 0; i < n; ++i) {
      if (component[i] != c) continue;
      out.d[i] = ratio[i].get_num() * (common_den / ratio[i].get_den());
      mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), out.d[i].get_mpz_t());
    }
    for (std::size_t i = 0; i < n; ++i)
      if (component[i] == c) out.d[i] /= g;
  }
  return out;
}

ExchangeMatrix mutate(const ExchangeMatrix& b, std::size_t k) {
  const std::size_t n = b.rank();
  if (k >= n) throw std::out_of_range("mutation index out of range");
  IntMatrix m(b.rows(), n);
  for (std::size_t i = 0; i < b.rows(); ++i) {
    const Integer& bik = b(i, k);
    for (std::size_t j = 0; j < n; ++j) {
      if (i == k || j == k) {
        m(i, j) = -b(i, j);
        continue;
      }
      const Integer& bkj = b(k, j);
      // (|b_ik| b_kj + b_ik |b_kj|) / 2 is nonzero only when b_ik and b_kj share a sign.
      if (sgn(bik) > 0 && sgn(bkj) > 0)
        m(i, j) = b(i, j) + bik * bkj;
      else if (sgn(bik) < 0 && sgn(bkj) < 0)
        m(i, j) = b(i, j) - bik * bkj;
      else
        m(i, j) = b(i, j);
    }
  }
  return ExchangeMatrix(n, b.frozen(), std::move(m));
}

IntMatrix cartan_counterpart(const ExchangeMatrix& b) {
  if (!is_sign_skew_symmetric(b)) throw std::invalid_argument("Cartan counterpart needs a sign-skew-symmetric matrix");
  const std::size_t n = b.rank();
  IntMatrix a(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) a(i, j) = i == j ? Integer(2) : Integer(-abs_value(b(i, j)));
  return a;
}

ExchangeMatrix restrict_to(const ExchangeMatrix& b, std::span<const std::size_t> keep) {
  if (keep.empty()) throw std::invalid_argument("restriction needs a nonempty index set");
  std::vector<bool> kept(b.rank(), false);
  for (std::size_t j : keep) {
    if (j >= b.rank()) throw std::out_of_range("restriction index out of range");
    if (kept[j]) throw std::invalid_argument("duplicate restriction index");
    kept[j] = true;
  }
  std::vector<std::size_t> order(keep.begin(), keep.end());
  std::sort(order.begin(), order.end());
  std::vector<std::size_t> row_order = order;
  for (std::size_t i = b.rank(); i < b.rows(); ++i) row_order.push_back(i);
  for (std::size_t i = 0; i < b.rank(); ++i)
    if (!kept[i]) row_order.push_back(i);
  IntMatrix m(row_order.size(), order.size());
  for (std::size_t r = 0; r < row_order.size(); ++r)
    for (std::size_t c = 0; c < order.size(); ++c) m(r, c) = b(row_order[r], order[c]);
  return ExchangeMatrix(order.size(), row_order.size() - order.size(), std::move(m));
}

ExchangeMatrix direct_product(const ExchangeMatrix& a, const ExchangeMatrix& b) {
  const std::size_t n = a.rank() + b.rank();
  const std::size_t frozen = a.frozen() + b.frozen();
  IntMatrix m(n + frozen, n);
  for (std::size_t i = 0; i < a.rank(); ++i)
    for (std::size_t j = 0; j < a.rank(); ++j) m(i, j) = a(i, j);
  for (std::size_t i = 0; i < b.rank(); ++i)
    for (std::size_t j = 0; j < b.rank(); ++j) m(a.rank() + i, a.rank() + j) = b(i, j);
  for (std::size_t i = 0; i < a.frozen(); ++i)
    for (std::size_t j = 0; j < a.rank(); ++j) m(n + i, j) = a(a.rank() + i, j);
  for (std::size_t i = 0; i < b.frozen(); ++i)
    for (std::size_t j = 0; j < b.rank(); ++j) m(n + a.frozen() + i, a.rank() + j) = b(b.rank() + i, j);
  return ExchangeMatrix(n, frozen, std::move(m));
}

ExchangeMatrix permute(const ExchangeMatrix& b, std::span<const std::size_t> sigma) {
  const std::size_t n = b.rank();
  if (sigma.size() != n) throw std::invalid_argument("permutation size mismatch");
  IntMatrix m(b.rows(), n);
  for (std::size_t r = 0; r < b.rows(); ++r) {
    const std::size_t src_row = r < n ? sigma[r] : r;
    for (std::size_t c = 0; c < n; ++c) m(r, c) = b(src_row, sigma[c]);
  }
  return ExchangeMatrix(n, b.frozen(), std::move(m));
}

namespace {

nlohmann::json integer_to_json(const Integer& v) {
  if (v.fits_slong_p()) return v.get_si();
  return v.get_str();
}

Integer integer_from_json(const nlohmann::json& j) {
  if (j.is_number_integer()) return Integer(j.get<long>());
  if (j.is_string()) return Integer(j.get<std::string>());
  throw std::invalid_argument("matrix entry must be an integer");
}

}  // namespace

nlohmann::json to_json(const ExchangeMatrix& b) {
  nlohmann::json rows = nlohmann::json::array();
  for (std::size_t i = 0; i < b.rows(); ++i) {
    nlohmann::json row = nlohmann::json::array();
    for (std::size_t j = 0; j < b.rank(); ++j) row.push_back(integer_to_json(b(i, j)));
    rows.push_back(std::move(row));
  }
  return {{"n", b.rank()}, {"frozen", b.frozen()}, {"rows", std::move(rows)}};
}

ExchangeMatrix matrix_from_json(const nlohmann::json& j) {
  const auto n = j.at("n").get<std::size_t>();
  const auto frozen = j.value("frozen", std::size_t{0});
  const auto& rows = j.at("rows");
  if (rows.size() != n + frozen) throw std::invalid_argument("matrix JSON: expected n + frozen rows");
  IntMatrix m(n + frozen, n);
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (rows[i].size() != n) throw std::invalid_argument("matrix JSON: each row must have n entries");
    for (std::size_t k = 0; k < n; ++k) m(i, k) = integer_from_json(rows[i][k]);
  }
  return ExchangeMatrix(n, frozen, std::move(m));
}

}  // namespace clusterlab
