#pragma once

#include "qrate/states.hpp"

namespace qrate {

struct CompressionReport {
  std::size_t n = 0;
  double rate = 0.0;       // bits per copy
  double kept_mass = 0.0;  // probability weight of the retained subspace
  double fidelity = 0.0;   // block entanglement fidelity of compress+decompress
};

/// Typical-subspace compression of rho^{(x)n} at floor(2^{n rate}) retained
/// dimensions: keep the largest-probability eigenvectors, route everything
/// else to the single most likely basis state. For that map the block
/// entanglement fidelity equals kept_mass^2 exactly (all cross terms vanish
/// in the eigenbasis), so everything reduces to type-class combinatorics and
/// no 2^n-dimensional matrices are ever formed.
CompressionReport schumacher_fidelity(const DensityMatrix& rho, std::size_t n,
                                      double rate);

}  // namespace qrate
