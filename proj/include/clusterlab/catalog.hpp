#pragma once

#include <cstddef>

#include "clusterlab/matrix.hpp"
#include "clusterlab/random.hpp"

namespace clusterlab {

// Rank-2 matrix [[0, b], [-c, 0]] for b, c >= 0.
ExchangeMatrix rank2_matrix(long b, long c);

// [[0,1,1],[-1,0,1],[-1,-1,0]]
ExchangeMatrix brick_wall_matrix();

// Rank-2 pattern with b = c = 1 over generators q1..q5 whose exchange
// relations are the three-term Plucker relations of Gr(2,5).
ExchangeMatrix grassmannian_2_5_matrix();

// Random matrix with a skew-symmetrizable principal part: a symmetrizer is
// drawn from {1,2,3}^n, then each pair (b_ij, b_ji) uniformly among the pairs
// in [-bound, bound]^2 compatible with it. Frozen entries are uniform.
ExchangeMatrix random_skew_symmetrizable(Rng& rng, std::size_t n, long bound, std::size_t frozen);

}  // namespace clusterlab
