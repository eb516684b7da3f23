#pragma once

#include "qrate/channels.hpp"
#include "qrate/complex_matrix.hpp"
#include "qrate/states.hpp"

namespace qrate {

/// State on A (x) B with declared local dimensions.
struct BipartiteState {
  std::size_t dim_A = 0;
  std::size_t dim_B = 0;
  DensityMatrix state;

  BipartiteState(std::size_t da, std::size_t db, DensityMatrix s);
  DensityMatrix marginal_A() const;
  DensityMatrix marginal_B() const;
};

/// All values in bits (log base 2).
double von_neumann_entropy(const DensityMatrix& rho);
double entropy_of_operator(const ComplexMatrix& psd);  // PSD, any trace

/// I(A;B) = H(A) + H(B) - H(AB)
double mutual_information(const BipartiteState& w);
/// I(A>B) = H(B) - H(AB); can be negative.
double coherent_information(const BipartiteState& s);

/// F_e(rho, N) = <psi| (id (x) N)(psi) |psi> for any purification psi of rho.
/// Evaluated as sum_k |Tr(rho K_k)|^2, which is purification independent.
double entanglement_fidelity(const DensityMatrix& rho, const QuantumChannel& n);
/// d(rho, N) = 1 - F_e(rho, N)
double distortion(const DensityMatrix& rho, const QuantumChannel& n);

/// Unnormalized ||rho - sigma||_1 (max value 2).
double trace_distance(const DensityMatrix& rho, const DensityMatrix& sigma);

}  // namespace qrate
