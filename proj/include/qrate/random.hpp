#pragma once

#include <cstdint>
#include <random>

#include "qrate/channels.hpp"
#include "qrate/complex_matrix.hpp"
#include "qrate/states.hpp"

namespace qrate {

using Rng = std::mt19937_64;

ComplexMatrix random_ginibre(Rng& rng, std::size_t rows, std::size_t cols);
ComplexMatrix random_hermitian(Rng& rng, std::size_t dim, double scale = 1.0);
/// Random operator with 0 <= P <= I (spectrum drawn uniformly in [0,1]).
ComplexMatrix random_effect(Rng& rng, std::size_t dim);
std::vector<cplx> random_pure_vector(Rng& rng, std::size_t dim);
DensityMatrix random_density(Rng& rng, std::size_t dim);
/// Haar-ish random channel from a random isometry with `kraus_rank`
/// environment dimensions (QR of a Ginibre matrix).
QuantumChannel random_channel(Rng& rng, std::size_t dim_in, std::size_t dim_out,
                              std::size_t kraus_rank);
ComplexMatrix random_unitary(Rng& rng, std::size_t dim);

/// Gram-Schmidt column orthonormalization (columns must be independent).
ComplexMatrix orthonormalize_columns(const ComplexMatrix& m);

}  // namespace qrate
