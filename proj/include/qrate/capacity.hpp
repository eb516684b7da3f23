#pragma once

#include <cstdint>
#include <vector>

#include "qrate/channels.hpp"
#include "qrate/complex_matrix.hpp"
#include "qrate/states.hpp"

namespace qrate {

struct CapacityConfig {
  std::size_t restarts = 16;   // multi-start count for the non-concave searches
  std::uint64_t seed = 42;
  std::size_t max_iters = 400;
  double tol = 1e-6;           // certificate gap target for the concave ascent
};

struct CapacityEstimate {
  double value = 0.0;      // bits (clamped at 0)
  double raw = 0.0;        // unclamped best objective (can be negative)
  bool certified = false;  // true only for the concave entanglement-assisted case
  std::size_t restarts = 0;
  double spread = 0.0;     // max - min over restarts
  double gap = 0.0;        // optimality certificate gap when certified
  ComplexMatrix optimizer_state;          // best input state (coherent / ea)
  std::vector<double> ensemble_probs;     // best ensemble (holevo)
  std::vector<std::vector<cplx>> ensemble_states;
};

/// Best-found Holevo quantity chi = H(N(rho_bar)) - sum_i p_i H(N(psi_i))
/// over ensembles of at most d^2 pure states. Not certified (non-concave
/// jointly in probabilities and states).
CapacityEstimate holevo_capacity(const QuantumChannel& n,
                                 const CapacityConfig& config = {});

/// Best-found single-letter coherent information max over inputs of
/// H(N(rho)) - H(N_c(rho)); raw maximum reported, value clamped at 0.
CapacityEstimate coherent_info_capacity(const QuantumChannel& n,
                                        const CapacityConfig& config = {});

/// Entanglement-assisted mutual information max over inputs of
/// H(rho) + H(N(rho)) - H(N_c(rho)). Concave, so gradient ascent certifies
/// the global maximum: certified = true with gap <= config.tol.
CapacityEstimate ea_capacity(const QuantumChannel& n,
                             const CapacityConfig& config = {});

}  // namespace qrate
