#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "qrate/channels.hpp"
#include "qrate/states.hpp"

namespace qrate {

struct SolverConfig {
  double tol = 1e-6;          // stationarity gap target for inner solves
  double rate_tol = 1e-4;     // duality gap target for D-targeted solves
  std::size_t max_iters = 10000;
};

/// One solved point of a rate-distortion curve.
struct RDPoint {
  double D = 0.0;         // requested distortion budget
  double rate = 0.0;      // bits
  double lambda = 0.0;    // multiplier on the distortion constraint
  ChoiMatrix choi;        // an optimizing channel
  double gap = 0.0;       // stationarity residual of the inner solve
  double achieved_distortion = 0.0;
  bool constraint_active = false;  // achieved distortion within 1e-6 of D
};

enum class RDFlavor { eac, eaq, classical };

struct RDCurve {
  DensityMatrix source;
  std::vector<RDPoint> points;  // sorted by D
  RDFlavor flavor = RDFlavor::eac;
  bool monotone_ok = false;  // rates non-increasing within 1e-4
  bool convex_ok = false;    // midpoint convexity within 1e-4 on equispaced grids
};

/// Finite classical source with a nonnegative letter distortion matrix
/// d(u, uhat).
struct ClassicalSource {
  std::vector<double> pmf;
  std::vector<std::vector<double>> dist;  // dist[u][uhat]

  ClassicalSource(std::vector<double> p, std::vector<std::vector<double>> d);
};

/// Entanglement fidelity as an affine function of the Choi operator:
/// F_e(rho, J) = Tr(J W_rho). Matches the Kraus-form evaluation within 1e-9.
double fe_of_choi(const DensityMatrix& rho, const ChoiMatrix& j);
/// The rank-one operator W_rho with F_e = Tr(J W_rho).
ComplexMatrix fe_operator(const DensityMatrix& rho);

/// I(R;B) of (id (x) N_J) applied to the canonical purification of rho.
double mi_of_choi(const DensityMatrix& rho, const ChoiMatrix& j);
/// Euclidean gradient of mi_of_choi with respect to the (Hermitian) Choi
/// operator; used by the solver and validated against finite differences.
ComplexMatrix mi_gradient_choi(const DensityMatrix& rho, const ChoiMatrix& j);

/// Smallest D at which the optimal rate is 0: one minus the best entanglement
/// fidelity achievable by a constant (source-independent) channel, which
/// equals 1 - lambda_max(rho)^2.
double zero_rate_threshold(const DensityMatrix& rho);

/// min I(R;B) over channels with distortion <= D, shared entanglement free,
/// rate in classical bits per source symbol.
RDPoint solve_r_eac(const DensityMatrix& rho, double D,
                    const SolverConfig& config = {});
/// Quantum-bit version: exactly half the classical-bit rate, same channel.
RDPoint solve_r_eaq(const DensityMatrix& rho, double D,
                    const SolverConfig& config = {});

RDCurve rd_curve(const DensityMatrix& rho, const std::vector<double>& d_grid,
                 RDFlavor flavor, const SolverConfig& config = {});

/// Traces the curve by sweeping the multiplier instead of targeting D.
std::vector<RDPoint> rd_curve_lambda_sweep(const DensityMatrix& rho,
                                           const std::vector<double>& lambdas,
                                           const SolverConfig& config = {});

/// Unconstrained Lagrangian inner solve: min_J I(J) + lambda (1 - F_e(J)).
/// Exposed for oracles and diagnostics.
RDPoint solve_lagrangian(const DensityMatrix& rho, double lambda,
                         const SolverConfig& config = {},
                         const ChoiMatrix* warm_start = nullptr);

/// Classical rate-distortion function by Blahut-Arimoto with multiplier
/// bisection; bits.
double classical_rd(const ClassicalSource& source, double D,
                    const SolverConfig& config = {});

}  // namespace qrate
