#pragma once

#include <cstddef>
#include <initializer_list>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include <json.hpp>

#include "clusterlab/numeric.hpp"

namespace clusterlab {

// Dense row-major integer matrix.
class IntMatrix {
 public:
  IntMatrix() = default;
  IntMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}
  IntMatrix(std::initializer_list<std::initializer_list<long>> rows);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  Integer& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  const Integer& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

  bool operator==(const IntMatrix& other) const = default;

  std::string to_string() const;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Integer> data_;
};

// Extended exchange matrix: (n + frozen) x n. Rows 0..n-1 form the principal
// part B, rows n..n+frozen-1 the coefficient part C.
class ExchangeMatrix {
 public:
  ExchangeMatrix(std::size_t n, std::size_t frozen, IntMatrix entries);

  // Square matrix without frozen rows.
  static ExchangeMatrix square(std::initializer_list<std::initializer_list<long>> rows);
  // (n + frozen) rows of n entries, principal rows first.
  static ExchangeMatrix from_rows(std::size_t frozen, const std::vector<std::vector<long>>& rows);

  std::size_t rank() const { return n_; }
  std::size_t frozen() const { return frozen_; }
  std::size_t rows() const { return n_ + frozen_; }

  const Integer& operator()(std::size_t i, std::size_t j) const { return entries_(i, j); }
  const IntMatrix& entries() const { return entries_; }

  ExchangeMatrix principal() const;

  bool operator==(const ExchangeMatrix& other) const = default;

  std::string to_string() const { return entries_.to_string(); }

 private:
  std::size_t n_;
  std::size_t frozen_;
  IntMatrix entries_;
};

struct SkewSymmetrizer {
  std::vector<Integer> d;
  bool operator==(const SkewSymmetrizer&) const = default;
};

bool is_sign_skew_symmetric(const ExchangeMatrix& b);

bool is_skew_symmetric(const ExchangeMatrix& b);

std::optional<SkewSymmetrizer> find_skew_symmetrizer(const ExchangeMatrix& b);

// True iff d_i b_ij = -d_j b_ji on the principal part.
bool symmetrizes(const SkewSymmetrizer& d, const ExchangeMatrix& b);

ExchangeMatrix mutate(const ExchangeMatrix& b, std::size_t k);

// Generalized Cartan matrix with 2 on the diagonal and -|b_ij| off it.
IntMatrix cartan_counterpart(const ExchangeMatrix& b);

// Keeps the columns (and principal rows) indexed by `keep`; rows outside it
// are demoted to frozen rows, appended after the existing frozen block.
ExchangeMatrix restrict_to(const ExchangeMatrix& b, std::span<const std::size_t> keep);

ExchangeMatrix direct_product(const ExchangeMatrix& a, const ExchangeMatrix& b);

// Applies sigma to principal rows and columns: result(r, c) = b(sigma[r], sigma[c]);
// frozen rows keep their position, their columns are permuted.
ExchangeMatrix permute(const ExchangeMatrix& b, std::span<const std::size_t> sigma);

// {"n": n, "frozen": f, "rows": [[...], ...]}
nlohmann::json to_json(const ExchangeMatrix& b);
ExchangeMatrix matrix_from_json(const nlohmann::json& j);

}  // namespace clusterlab
