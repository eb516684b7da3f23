#include "qrate/eop.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "qrate/errors.hpp"
#include "qrate/random.hpp"

namespace qrate {

namespace {

constexpr double kLog2e = 1.4426950408889634;

// Purification with the environment padded to the full state dimension, so
// the environment dimension stays fixed while a channel is being optimized.
// Environment is the most significant factor.
std::vector<cplx> purify_padded(const ComplexMatrix& state) {
  std::size_t d = state.rows();
  EigResult e = eig_hermitian(state);
  std::vector<cplx> vec(d * d, cplx(0.0, 0.0));
  for (std::size_t k = 0; k < d; ++k) {
    double lam = std::max(e.values[k], 0.0);
    double amp = std::sqrt(lam);
    for (std::size_t i = 0; i < d; ++i) vec[k * d + i] = amp * e.vectors(i, k);
  }
  return vec;
}

// Polar-factor retraction onto matrices with orthonormal columns.
ComplexMatrix polar_isometry(const ComplexMatrix& x) {
  return x * matrix_inv_sqrt_psd(x.adjoint() * x, 1e-24);
}

// Environment map given as a stacked isometry V: column space C^{dE},
// rows indexed (e_out * rank + m); Kraus L_m[e', e] = V(e'*rank + m, e).
std::vector<ComplexMatrix> kraus_of_stacked(const ComplexMatrix& v,
                                            std::size_t d_out,
                                            std::size_t rank) {
  std::size_t d_in = v.cols();
  std::vector<ComplexMatrix> kraus(rank, ComplexMatrix(d_out, d_in));
  for (std::size_t m = 0; m < rank; ++m)
    for (std::size_t ep = 0; ep < d_out; ++ep)
      for (std::size_t e = 0; e < d_in; ++e)
        kraus[m](ep, e) = v(ep * rank + m, e);
  return kraus;
}

ComplexMatrix identity_stacked(std::size_t d, std::size_t rank) {
  ComplexMatrix v(d * rank, d);
  for (std::size_t e = 0; e < d; ++e) v(e * rank, e) = 1.0;
  return v;
}

// sigma = (Lambda (x) id_B)(mu_EB)
ComplexMatrix lambda_output(const ComplexMatrix& mu, std::size_t dB,
                            const std::vector<ComplexMatrix>& kraus) {
  std::size_t dEp = kraus.front().rows();
  ComplexMatrix sigma(dEp * dB, dEp * dB);
  ComplexMatrix idB = ComplexMatrix::identity(dB);
  for (const auto& l : kraus) {
    ComplexMatrix lifted = tensor(l, idB);
    sigma += lifted * mu * lifted.adjoint();
  }
  return sigma;
}

// Gradient of H(sigma) with respect to the stacked isometry entries.
ComplexMatrix lambda_gradient(const ComplexMatrix& mu, std::size_t dB,
                              const std::vector<ComplexMatrix>& kraus,
                              std::size_t rank) {
  std::size_t dEp = kraus.front().rows();
  std::size_t dE = kraus.front().cols();
  ComplexMatrix sigma = lambda_output(mu, dB, kraus);
  ComplexMatrix g = matrix_log2_clamped(sigma, 1e-30);
  g *= cplx(-1.0, 0.0);
  ComplexMatrix shift = ComplexMatrix::identity(sigma.rows());
  shift *= cplx(-kLog2e, 0.0);
  g += shift;

  ComplexMatrix idB = ComplexMatrix::identity(dB);
  ComplexMatrix grad(dEp * rank, dE);
  for (std::size_t m = 0; m < rank; ++m) {
    ComplexMatrix mfull = g * tensor(kraus[m], idB) * mu;
    for (std::size_t ep = 0; ep < dEp; ++ep)
      for (std::size_t e = 0; e < dE; ++e) {
        cplx acc = 0.0;
        for (std::size_t b = 0; b < dB; ++b)
          acc += mfull(ep * dB + b, e * dB + b);
        grad(ep * rank + m, e) = acc;
      }
  }
  return grad;
}

struct LambdaResult {
  ComplexMatrix v;
  double value = 0.0;
};

LambdaResult minimize_lambda(const ComplexMatrix& mu, std::size_t dB,
                             std::size_t rank, ComplexMatrix v,
                             std::size_t iters, double tol) {
  std::size_t dEp = v.rows() / rank;
  auto value = [&](const ComplexMatrix& w) {
    return entropy_of_operator(lambda_output(mu, dB, kraus_of_stacked(w, dEp, rank)));
  };
  double f = value(v);
  double t = 0.5;
  for (std::size_t it = 0; it < iters; ++it) {
    ComplexMatrix g =
        lambda_gradient(mu, dB, kraus_of_stacked(v, dEp, rank), rank);
    bool moved = false;
    while (t > 1e-12) {
      ComplexMatrix cand = polar_isometry(v - cplx(t, 0.0) * g);
      double fc = value(cand);
      if (fc <= f - 1e-14) {
        v = std::move(cand);
        if (f - fc < tol) {
          f = fc;
          return {std::move(v), f};
        }
        f = fc;
        moved = true;
        t = std::min(t * 1.4, 4.0);
        break;
      }
      t *= 0.5;
    }
    if (!moved) break;
  }
  return {std::move(v), f};
}

// mu_EB (environment most significant) of a bipartite state w_AB.
ComplexMatrix purifying_marginal(const BipartiteState& w, std::size_t& dE_out) {
  Purification p = purify(w.state);
  std::size_t dE = p.dim_R;
  ComplexMatrix mu = partial_trace(p.projector(), {dE, w.dim_A, w.dim_B}, {0, 2});
  dE_out = dE;
  return mu;
}

}  // namespace

EopEstimate entanglement_of_purification(const BipartiteState& w,
                                         const EopConfig& config) {
  if (w.dim_A * w.dim_B > 16)
    throw DimensionTooLarge("purification-entanglement search capped at dim 16");
  std::size_t dE = 0;
  ComplexMatrix mu = purifying_marginal(w, dE);
  std::size_t rank = config.kraus_rank == 0
                         ? dE
                         : std::min(config.kraus_rank, dE * dE);

  Rng rng(config.seed);
  EopEstimate est;
  est.restarts = std::max<std::size_t>(config.restarts, 1);
  double best = std::numeric_limits<double>::infinity();
  double worst = -std::numeric_limits<double>::infinity();
  for (std::size_t r = 0; r < est.restarts; ++r) {
    ComplexMatrix v0 = r == 0 ? identity_stacked(dE, rank)
                              : polar_isometry(random_ginibre(rng, dE * rank, dE));
    LambdaResult res =
        minimize_lambda(mu, w.dim_B, rank, std::move(v0), config.max_iters,
                        config.tol);
    if (res.value < best) {
      best = res.value;
      est.best_map = kraus_of_stacked(res.v, dE, rank);
    }
    worst = std::max(worst, res.value);
  }
  est.value = std::max(best, 0.0);
  est.spread = worst - best;
  return est;
}

namespace {

// State of the outer (channel) search for the unassisted upper bound.
struct ChannelSearch {
  const Purification* psi;
  std::size_t d, dR, denv, dE;
  double D;
  double penalty = 100.0;

  std::vector<ComplexMatrix> kraus_of_params(const std::vector<double>& x) const {
    ComplexMatrix m(d * denv, d);
    for (std::size_t i = 0, k = 0; i < d * denv; ++i)
      for (std::size_t j = 0; j < d; ++j, ++k)
        m(i, j) = cplx(x[2 * k], x[2 * k + 1]);
    ComplexMatrix v = polar_isometry(m);
    std::vector<ComplexMatrix> kraus(denv, ComplexMatrix(d, d));
    for (std::size_t e = 0; e < denv; ++e)
      for (std::size_t b = 0; b < d; ++b)
        for (std::size_t a = 0; a < d; ++a) kraus[e](b, a) = v(b * denv + e, a);
    return kraus;
  }

  double fe_of(const std::vector<ComplexMatrix>& kraus,
               const ComplexMatrix& rho) const {
    double fe = 0.0;
    for (const auto& k : kraus) {
      cplx t = 0.0;
      for (std::size_t i = 0; i < d; ++i)
        for (std::size_t j = 0; j < d; ++j) t += rho(i, j) * k(j, i);
      fe += std::norm(t);
    }
    return fe;
  }

  ComplexMatrix omega_of(const std::vector<ComplexMatrix>& kraus) const {
    ComplexMatrix proj = psi->projector();
    ComplexMatrix idR = ComplexMatrix::identity(dR);
    ComplexMatrix w(dR * d, dR * d);
    for (const auto& k : kraus) {
      ComplexMatrix lifted = tensor(idR, k);
      w += lifted * proj * lifted.adjoint();
    }
    return w;
  }

  ComplexMatrix mu_of(const ComplexMatrix& omega) const {
    std::vector<cplx> phi = purify_padded(omega);
    return partial_trace(outer(phi, phi), {dE, dR, d}, {0, 2});
  }
};

}  // namespace

double unassisted_rd_upper(const DensityMatrix& rho, double D,
                           const EopConfig& config) {
  if (!(D >= 0.0) || D >= 1.0)
    throw InvalidDistortion("distortion budget must lie in [0, 1)");
  Purification psi = purify(rho);
  std::size_t d = rho.dim(), dR = psi.dim_R;
  if (dR * d > 16)
    throw DimensionTooLarge("purification-entanglement search capped at dim 16");
  if (D <= 1e-12) return von_neumann_entropy(rho);
  if (D >= zero_rate_threshold(rho) - 1e-12) return 0.0;

  ChannelSearch cs{&psi, d, dR, d * d, dR * d, D};
  std::size_t rank = config.kraus_rank == 0
                         ? cs.dE
                         : std::min(config.kraus_rank, cs.dE * cs.dE);
  std::size_t nparams = 2 * (d * cs.denv) * d;
  Rng rng(config.seed);

  // an environment map rides along with each channel candidate
  auto refine_lambda = [&](const ComplexMatrix& mu, ComplexMatrix v,
                           std::size_t iters) {
    return minimize_lambda(mu, d, rank, std::move(v), iters, 1e-12);
  };
  auto eval = [&](const std::vector<double>& x, const ComplexMatrix& vlam,
                  double* dist_out = nullptr) {
    auto kraus = cs.kraus_of_params(x);
    double dist = 1.0 - cs.fe_of(kraus, rho.mat());
    if (dist_out) *dist_out = dist;
    ComplexMatrix mu = cs.mu_of(cs.omega_of(kraus));
    double h = entropy_of_operator(
        lambda_output(mu, d, kraus_of_stacked(vlam, cs.dE, rank)));
    double viol = std::max(0.0, dist - D);
    return h + cs.penalty * viol * viol;
  };

  // always-feasible baseline: do nothing, pay the lossless rate
  double best = von_neumann_entropy(rho);

  // strong candidate: the entanglement-assisted optimizer at the same budget
  try {
    RDPoint eac = solve_r_eac(rho, D);
    QuantumChannel n = channel_of_choi(eac.choi);
    ComplexMatrix mu = cs.mu_of(cs.omega_of(n.kraus()));
    EopConfig sub = config;
    BipartiteState wb(dR, d, DensityMatrix(cs.omega_of(n.kraus())));
    best = std::min(best, entanglement_of_purification(wb, sub).value);
  } catch (const Error&) {
    // fall through to the direct search
  }

  std::normal_distribution<double> gauss(0.0, 1.0);
  for (std::size_t restart = 0; restart < std::max<std::size_t>(config.channel_restarts, 1);
       ++restart) {
    std::vector<double> x(nparams);
    if (restart == 0) {
      // near-identity start
      std::fill(x.begin(), x.end(), 0.0);
      for (std::size_t a = 0; a < d; ++a) {
        std::size_t k = (a * cs.denv) * d + a;  // entry (a*denv+0, a)
        x[2 * k] = 1.0;
      }
      for (auto& v : x) v += 0.02 * gauss(rng);
    } else {
      for (auto& v : x) v = gauss(rng);
    }
    ComplexMatrix vlam = identity_stacked(cs.dE, rank);
    double f = eval(x, vlam);
    double step = 0.2;
    for (std::size_t outer = 0; outer < config.outer_iters; ++outer) {
      // environment-map refinement at the current channel
      ComplexMatrix mu = cs.mu_of(cs.omega_of(cs.kraus_of_params(x)));
      LambdaResult lr = refine_lambda(mu, std::move(vlam), 25);
      vlam = std::move(lr.v);
      f = eval(x, vlam);
      // finite-difference step in channel parameters
      std::vector<double> g(nparams);
      const double h = 1e-4;
      for (std::size_t i = 0; i < nparams; ++i) {
        std::vector<double> xp = x, xm = x;
        xp[i] += h;
        xm[i] -= h;
        g[i] = (eval(xp, vlam) - eval(xm, vlam)) / (2.0 * h);
      }
      bool moved = false;
      while (step > 1e-10) {
        std::vector<double> xn(nparams);
        for (std::size_t i = 0; i < nparams; ++i) xn[i] = x[i] - step * g[i];
        double fn = eval(xn, vlam);
        if (fn < f - 1e-12) {
          x = std::move(xn);
          f = fn;
          moved = true;
          step = std::min(step * 1.4, 2.0);
          break;
        }
        step *= 0.5;
      }
      if (!moved) break;
    }
    // feasibility repair: mix toward the identity, which scales the
    // distortion by (1 - s), then retune the environment map
    auto kraus = cs.kraus_of_params(x);
    double dist = 1.0 - cs.fe_of(kraus, rho.mat());
    if (dist > D) {
      double s = (dist - D) / dist + 1e-12;
      s = std::min(s, 1.0);
      std::vector<ComplexMatrix> mixed;
      for (const auto& k : kraus) mixed.push_back(cplx(std::sqrt(1.0 - s), 0.0) * k);
      ComplexMatrix idk = ComplexMatrix::identity(d);
      mixed.push_back(cplx(std::sqrt(s), 0.0) * idk);
      kraus = std::move(mixed);
    }
    ComplexMatrix mu = cs.mu_of(cs.omega_of(kraus));
    LambdaResult fin = refine_lambda(mu, std::move(vlam), 150);
    best = std::min(best, fin.value);
  }
  return std::max(best, 0.0);
}

SandwichReport sandwich_check(const DensityMatrix& rho, double D,
                              const SolverConfig& rd_config,
                              const EopConfig& eop_config) {
  RDPoint eac = solve_r_eac(rho, D, rd_config);
  SandwichReport rep;
  rep.lower = 0.5 * eac.rate;
  rep.upper = unassisted_rd_upper(rho, D, eop_config);
  Purification psi = purify(rho);
  QuantumChannel n = channel_of_choi(eac.choi);
  ComplexMatrix idR = ComplexMatrix::identity(psi.dim_R);
  ComplexMatrix w(psi.dim_R * n.dim_out(), psi.dim_R * n.dim_out());
  ComplexMatrix proj = psi.projector();
  for (const auto& k : n.kraus()) {
    ComplexMatrix lifted = tensor(idR, k);
    w += lifted * proj * lifted.adjoint();
  }
  rep.coherent_info_diag = coherent_information(
      BipartiteState(psi.dim_R, n.dim_out(), DensityMatrix(w)));
  rep.ok = rep.lower <= rep.upper + 1e-6;
  return rep;
}

}  // namespace qrate
