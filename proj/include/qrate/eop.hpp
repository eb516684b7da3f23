#pragma once

#include <cstdint>
#include <vector>

#include "qrate/channels.hpp"
#include "qrate/entropic.hpp"
#include "qrate/rdsolve.hpp"
#include "qrate/states.hpp"

namespace qrate {

struct EopConfig {
  std::size_t restarts = 32;       // independent local searches
  std::uint64_t seed = 42;
  std::size_t max_iters = 400;     // gradient steps per restart
  double tol = 1e-9;               // objective-decrease stopping threshold
  std::size_t kraus_rank = 0;      // environment-map Kraus rank, 0 = d_E
  std::size_t channel_restarts = 6;   // outer searches in unassisted_rd_upper
  std::size_t outer_iters = 30;       // alternating rounds per outer search
};

struct EopEstimate {
  double value = 0.0;  // bits; an upper estimate (the problem is non-convex)
  std::size_t restarts = 0;
  std::vector<ComplexMatrix> best_map;  // Kraus of the best environment map
  double spread = 0.0;                  // max - min over restarts
};

/// E_p(w_AB): purify w, trace out A, and minimize the output entropy
/// H((id_B (x) Lambda)(mu_BE)) over CPTP maps Lambda on the purifying
/// system. Multi-start local descent; the identity map is always among the
/// starts, so the estimate never exceeds H of the purifying marginal.
EopEstimate entanglement_of_purification(const BipartiteState& w,
                                         const EopConfig& config = {});

/// Single-copy upper bound on the unassisted quantum rate-distortion
/// function: min over channels N with d(rho, N) <= D of E_p((id (x) N)(psi)).
/// Local search over Stinespring-parameterized channels with the constraint
/// enforced by penalty plus a final mixing-toward-identity repair, so the
/// reported channel is always feasible.
double unassisted_rd_upper(const DensityMatrix& rho, double D,
                           const EopConfig& config = {});

struct SandwichReport {
  double lower = 0.0;   // entanglement-assisted qubit rate (true lower bound)
  double upper = 0.0;   // single-copy purification-entanglement upper bound
  double coherent_info_diag = 0.0;  // coherent information at the assisted-optimal channel
  bool ok = false;      // lower <= upper + 1e-6
};

SandwichReport sandwich_check(const DensityMatrix& rho, double D,
                              const SolverConfig& rd_config = {},
                              const EopConfig& eop_config = {});

}  // namespace qrate
