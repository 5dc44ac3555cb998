#include "clusterlab/catalog.hpp"

#include <stdexcept>
#include <utility>
#include <vector>

namespace clusterlab {

ExchangeMatrix rank2_matrix(long b, long c) {
  if (b < 0 || c < 0 || (b == 0) != (c == 0)) throw std::invalid_argument("b and c must be both zero or both positive");
  return ExchangeMatrix::square({{0, b}, {-c, 0}});
}

ExchangeMatrix brick_wall_matrix() { return ExchangeMatrix::square({{0, 1, 1}, {-1, 0, 1}, {-1, -1, 0}}); }

ExchangeMatrix grassmannian_2_5_matrix() {
  return ExchangeMatrix::from_rows(5, {{0, -1}, {1, 0}, {0, -1}, {1, 0}, {0, 1}, {-1, 1}, {-1, 0}});
}

ExchangeMatrix random_skew_symmetrizable(Rng& rng, std::size_t n, long bound, std::size_t frozen) {
  std::vector<long> d(n);
  for (auto& x : d) x = rng.uniform(1, 3);
  IntMatrix m(n + frozen, n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      std::vector<std::pair<long, long>> pairs;
      for (long x = -bound; x <= bound; ++x)
        for (long y = -bound; y <= bound; ++y)
          if (d[i] * x == -d[j] * y) pairs.emplace_back(x, y);
      const auto& [x, y] = pairs[rng.below(pairs.size())];
      m(i, j) = x;
      m(j, i) = y;
    }
  }
  for (std::size_t r = n; r < n + frozen; ++r)
    for (std::size_t j = 0; j < n; ++j) m(r, j) = rng.uniform(-bound, bound);
  return ExchangeMatrix(n, frozen, std::move(m));
}

}  // namespace clusterlab
