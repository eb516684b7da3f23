#pragma once

#include "qrate/channels.hpp"
#include "qrate/entropic.hpp"
#include "qrate/states.hpp"

namespace qrate {

/// Joint CPTP map on n copies of a d-dimensional system
/// (dim_in = dim_out = d^n).
struct BlockChannel {
  std::size_t n = 0;
  std::size_t d = 0;
  QuantumChannel channel;

  BlockChannel(std::size_t copies, std::size_t single_dim, QuantumChannel ch);
};

BlockChannel product_block(const QuantumChannel& n_single, std::size_t copies);

/// The induced single-copy map on copy i (1-based) at the fixed source rho:
/// X -> Tr_{all but i}[ F_n(rho (x) ... X ... (x) rho) ].
/// This is CPTP; its Choi is reconstructed by evaluating the map on a full
/// matrix-unit basis (the underlying n-copy definition only pins the map down
/// at the product source, so the returned channel is source-relative).
QuantumChannel marginal_channel(const DensityMatrix& rho, const BlockChannel& f,
                                std::size_t i);

/// dbar = (1/n) sum_i d(rho, F_n^{(i)}), in [0, 1].
double average_distortion(const DensityMatrix& rho, const BlockChannel& f);

struct Lemma1Report {
  double lhs = 0.0;         // || (id (x) F_n)(psi^{(x)n}) - omega^{(x)n} ||_1
  double dbar = 0.0;        // average per-copy distortion of F_n
  double d_target = 0.0;    // d(rho, N) for the reference channel
  bool bound_holds = false; // dbar <= d_target + lhs + 1e-9
};

/// Simulation-to-distortion bridge: if a block map approximates n copies of
/// omega = (id (x) N)(psi) to trace distance eps, its average distortion is
/// within eps of d(rho, N). Throws BlockTooLarge when the joint
/// reference+output space exceeds dimension 64.
Lemma1Report lemma1_check(const DensityMatrix& rho,
                          const QuantumChannel& n_target,
                          const BlockChannel& f);

}  // namespace qrate
