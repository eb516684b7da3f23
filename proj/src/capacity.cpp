#include "qrate/capacity.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "qrate/entropic.hpp"
#include "qrate/errors.hpp"
#include "qrate/random.hpp"

namespace qrate {

namespace {

constexpr double kLog2e = 1.4426950408889634;

void check_dims(const QuantumChannel& n) {
  if (n.dim_in() > 4)
    throw DimensionTooLarge("capacity search limited to input dimension 4");
}

// Simple finite-difference ascent over an unconstrained real vector with a
// user-supplied objective; used by the two non-concave searches.
double fd_ascend(std::vector<double>& x,
                 const std::function<double(const std::vector<double>&)>& f,
                 std::size_t max_iters) {
  double val = f(x);
  double step = 0.2;
  const double h = 1e-5;
  for (std::size_t it = 0; it < max_iters; ++it) {
    std::vector<double> g(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) {
      std::vector<double> xp = x, xm = x;
      xp[i] += h;
      xm[i] -= h;
      g[i] = (f(xp) - f(xm)) / (2.0 * h);
    }
    bool moved = false;
    while (step > 1e-10) {
      std::vector<double> xn(x.size());
      for (std::size_t i = 0; i < x.size(); ++i) xn[i] = x[i] + step * g[i];
      double vn = f(xn);
      if (vn > val + 1e-13) {
        x = std::move(xn);
        val = vn;
        moved = true;
        step = std::min(step * 1.4, 2.0);
        break;
      }
      step *= 0.5;
    }
    if (!moved) break;
  }
  return val;
}

ComplexMatrix state_of_params(const std::vector<double>& x, std::size_t d) {
  ComplexMatrix g(d, d);
  for (std::size_t i = 0, k = 0; i < d; ++i)
    for (std::size_t j = 0; j < d; ++j, ++k)
      g(i, j) = cplx(x[2 * k], x[2 * k + 1]);
  ComplexMatrix rho = g * g.adjoint();
  cplx tr = rho.trace();
  if (std::abs(tr) < 1e-30)
    return cplx(1.0 / static_cast<double>(d), 0.0) * ComplexMatrix::identity(d);
  rho *= cplx(1.0 / tr.real(), 0.0);
  return rho;
}

}  // namespace

CapacityEstimate holevo_capacity(const QuantumChannel& n,
                                 const CapacityConfig& config) {
  check_dims(n);
  std::size_t d = n.dim_in();
  std::size_t m = d * d;  // ensemble size
  std::size_t nparams = m + m * 2 * d;  // logits + state amplitudes

  auto decode = [&](const std::vector<double>& x, std::vector<double>& probs,
                    std::vector<std::vector<cplx>>& states) {
    probs.assign(m, 0.0);
    double zmax = *std::max_element(x.begin(), x.begin() + m);
    double z = 0.0;
    for (std::size_t i = 0; i < m; ++i) {
      probs[i] = std::exp(x[i] - zmax);
      z += probs[i];
    }
    for (auto& p : probs) p /= z;
    states.assign(m, std::vector<cplx>(d));
    for (std::size_t i = 0; i < m; ++i) {
      double norm2 = 0.0;
      for (std::size_t j = 0; j < d; ++j) {
        cplx a(x[m + i * 2 * d + 2 * j], x[m + i * 2 * d + 2 * j + 1]);
        states[i][j] = a;
        norm2 += std::norm(a);
      }
      double s = norm2 > 1e-30 ? 1.0 / std::sqrt(norm2) : 0.0;
      for (auto& a : states[i]) a *= s;
      if (s == 0.0) states[i][0] = 1.0;
    }
  };
  auto objective = [&](const std::vector<double>& x) {
    std::vector<double> probs;
    std::vector<std::vector<cplx>> states;
    decode(x, probs, states);
    ComplexMatrix avg(n.dim_out(), n.dim_out());
    double cond = 0.0;
    for (std::size_t i = 0; i < m; ++i) {
      ComplexMatrix out = n.apply(outer(states[i], states[i]));
      cond += probs[i] * entropy_of_operator(out);
      out *= cplx(probs[i], 0.0);
      avg += out;
    }
    return entropy_of_operator(avg) - cond;
  };

  Rng rng(config.seed);
  std::normal_distribution<double> gauss(0.0, 1.0);
  CapacityEstimate est;
  est.restarts = std::max<std::size_t>(config.restarts, 1);
  double best = -std::numeric_limits<double>::infinity();
  double worst = std::numeric_limits<double>::infinity();
  for (std::size_t r = 0; r < est.restarts; ++r) {
    std::vector<double> x(nparams);
    if (r == 0) {
      // uniform ensemble over the computational basis (plus slack states)
      std::fill(x.begin(), x.end(), 0.0);
      for (std::size_t i = 0; i < m; ++i) x[m + i * 2 * d + 2 * (i % d)] = 1.0;
    } else {
      for (auto& v : x) v = gauss(rng);
    }
    double val = fd_ascend(x, objective, config.max_iters);
    if (val > best) {
      best = val;
      decode(x, est.ensemble_probs, est.ensemble_states);
    }
    worst = std::min(worst, val);
  }
  est.raw = best;
  est.value = std::max(best, 0.0);
  est.spread = best - worst;
  est.certified = false;
  return est;
}

CapacityEstimate coherent_info_capacity(const QuantumChannel& n,
                                        const CapacityConfig& config) {
  check_dims(n);
  std::size_t d = n.dim_in();
  QuantumChannel comp = stinespring(n).complementary;
  auto objective = [&](const std::vector<double>& x) {
    ComplexMatrix rho = state_of_params(x, d);
    return entropy_of_operator(n.apply(rho)) -
           entropy_of_operator(comp.apply(rho));
  };

  Rng rng(config.seed);
  std::normal_distribution<double> gauss(0.0, 1.0);
  CapacityEstimate est;
  est.restarts = std::max<std::size_t>(config.restarts, 1);
  double best = -std::numeric_limits<double>::infinity();
  double worst = std::numeric_limits<double>::infinity();
  for (std::size_t r = 0; r < est.restarts; ++r) {
    std::vector<double> x(2 * d * d);
    if (r == 0) {
      // maximally mixed start
      std::fill(x.begin(), x.end(), 0.0);
      for (std::size_t i = 0; i < d; ++i) x[2 * (i * d + i)] = 1.0;
    } else {
      for (auto& v : x) v = gauss(rng);
    }
    double val = fd_ascend(x, objective, config.max_iters);
    if (val > best) {
      best = val;
      est.optimizer_state = state_of_params(x, d);
    }
    worst = std::min(worst, val);
  }
  est.raw = best;
  est.value = std::max(best, 0.0);
  est.spread = best - worst;
  est.certified = false;
  return est;
}

CapacityEstimate ea_capacity(const QuantumChannel& n,
                             const CapacityConfig& config) {
  check_dims(n);
  std::size_t d = n.dim_in();
  QuantumChannel comp = stinespring(n).complementary;

  auto objective = [&](const ComplexMatrix& rho) {
    return entropy_of_operator(rho) + entropy_of_operator(n.apply(rho)) -
           entropy_of_operator(comp.apply(rho));
  };
  auto gradient = [&](const ComplexMatrix& rho) {
    ComplexMatrix g = cplx(-1.0, 0.0) * matrix_log2_clamped(rho, 1e-30);
    g += n.apply_adjoint(cplx(-1.0, 0.0) *
                         matrix_log2_clamped(n.apply(rho), 1e-30));
    g -= comp.apply_adjoint(cplx(-1.0, 0.0) *
                            matrix_log2_clamped(comp.apply(rho), 1e-30));
    ComplexMatrix shift = ComplexMatrix::identity(d);
    shift *= cplx(-kLog2e, 0.0);
    g += shift;
    return g;
  };

  ComplexMatrix rho = ComplexMatrix::identity(d);
  rho *= cplx(1.0 / static_cast<double>(d), 0.0);
  double val = objective(rho);
  double t = 0.5;
  double gap = std::numeric_limits<double>::infinity();
  for (std::size_t it = 0; it < config.max_iters; ++it) {
    ComplexMatrix g = gradient(rho);
    double gmax = eig_hermitian(g).values.front();
    cplx inner = (g * rho).trace();
    gap = gmax - inner.real();
    if (gap <= config.tol) break;
    bool moved = false;
    while (t > 1e-12) {
      // mirror (exponentiated-gradient) ascent step, renormalized
      ComplexMatrix m = hermitian_function(rho, [](double x) {
        return std::log(std::max(x, 1e-30));
      });
      m += cplx(t, 0.0) * g;
      double top = eig_hermitian(m).values.front();
      ComplexMatrix cand = hermitian_function(
          m, [top](double v) { return std::exp(v - top); });
      cand *= cplx(1.0 / cand.trace().real(), 0.0);
      double vn = objective(cand);
      if (vn > val + 1e-14) {
        rho = std::move(cand);
        val = vn;
        moved = true;
        t = std::min(t * 1.4, 8.0);
        break;
      }
      t *= 0.5;
    }
    if (!moved) break;
  }
  if (gap > std::max(config.tol, 1e-4))
    throw SolverDiverged("entanglement-assisted ascent failed to certify");

  CapacityEstimate est;
  est.raw = val;
  est.value = std::max(val, 0.0);
  est.certified = true;
  est.gap = std::max(gap, 0.0);
  est.restarts = 1;
  est.spread = 0.0;
  est.optimizer_state = rho;
  return est;
}

}  // namespace qrate
