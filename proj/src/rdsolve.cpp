#include "qrate/rdsolve.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "qrate/entropic.hpp"
#include "qrate/errors.hpp"

namespace qrate {

namespace {

constexpr double kLog2e = 1.4426950408889634;  // 1/ln 2

// Everything the inner solver needs about a fixed source.
struct SourceContext {
  Purification p;
  std::size_t dR, dA, dB;
  ComplexMatrix W;  // F_e(J) = Tr(J W)

  explicit SourceContext(const DensityMatrix& rho)
      : p(purify(rho)), dR(p.dim_R), dA(p.dim_A), dB(p.dim_A) {
    // F_e = <s|J|s> with s[(a,b)] = rho(b,a); rank-one affine form.
    std::vector<cplx> s(dA * dB, cplx(0.0, 0.0));
    for (std::size_t a = 0; a < dA; ++a)
      for (std::size_t b = 0; b < dB; ++b) s[a * dB + b] = rho.mat()(b, a);
    W = outer(s, s);
  }

  // omega = (id_R (x) N_J)(|psi><psi|), linear in J.
  ComplexMatrix omega_of(const ComplexMatrix& j) const {
    ComplexMatrix w(dR * dB, dR * dB);
    for (std::size_t r = 0; r < dR; ++r)
      for (std::size_t rp = 0; rp < dR; ++rp)
        for (std::size_t b = 0; b < dB; ++b)
          for (std::size_t bp = 0; bp < dB; ++bp) {
            cplx acc = 0.0;
            for (std::size_t a = 0; a < dA; ++a) {
              cplx ca = p.vec[r * dA + a];
              if (ca == cplx(0.0, 0.0)) continue;
              for (std::size_t ap = 0; ap < dA; ++ap)
                acc += ca * std::conj(p.vec[rp * dA + ap]) *
                       j(a * dB + b, ap * dB + bp);
            }
            w(r * dB + b, rp * dB + bp) = acc;
          }
    return w;
  }

  // Adjoint of omega_of: pulls a gradient on the RB space back to the Choi.
  ComplexMatrix pullback(const ComplexMatrix& g) const {
    ComplexMatrix out(dA * dB, dA * dB);
    for (std::size_t a = 0; a < dA; ++a)
      for (std::size_t ap = 0; ap < dA; ++ap)
        for (std::size_t b = 0; b < dB; ++b)
          for (std::size_t bp = 0; bp < dB; ++bp) {
            cplx acc = 0.0;
            for (std::size_t r = 0; r < dR; ++r) {
              cplx ca = std::conj(p.vec[r * dA + a]);
              if (ca == cplx(0.0, 0.0)) continue;
              for (std::size_t rp = 0; rp < dR; ++rp)
                acc += ca * p.vec[rp * dA + ap] * g(r * dB + b, rp * dB + bp);
            }
            out(a * dB + b, ap * dB + bp) = acc;
          }
    return out;
  }

  double mi(const ComplexMatrix& j) const {
    ComplexMatrix w = omega_of(j);
    ComplexMatrix wR = partial_trace(w, {dR, dB}, {0});
    ComplexMatrix wB = partial_trace(w, {dR, dB}, {1});
    return entropy_of_operator(wR) + entropy_of_operator(wB) -
           entropy_of_operator(w);
  }

  double fe(const ComplexMatrix& j) const {
    cplx t = 0.0;
    for (std::size_t i = 0; i < j.rows(); ++i)
      for (std::size_t k = 0; k < j.cols(); ++k) t += j(i, k) * W(k, i);
    return t.real();
  }

  // d(mi)/dJ, exact for arbitrary Hermitian perturbations of J.
  ComplexMatrix mi_grad(const ComplexMatrix& j) const {
    ComplexMatrix w = omega_of(j);
    ComplexMatrix wR = partial_trace(w, {dR, dB}, {0});
    ComplexMatrix wB = partial_trace(w, {dR, dB}, {1});
    ComplexMatrix g =
        matrix_log2_clamped(w, 1e-30) -
        tensor(matrix_log2_clamped(wR, 1e-30), ComplexMatrix::identity(dB)) -
        tensor(ComplexMatrix::identity(dR), matrix_log2_clamped(wB, 1e-30));
    ComplexMatrix shift = ComplexMatrix::identity(dR * dB);
    shift *= cplx(-kLog2e, 0.0);
    g += shift;
    return pullback(g);
  }
};

ComplexMatrix identity_choi(std::size_t d) {
  ComplexMatrix j(d * d, d * d);
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t k = 0; k < d; ++k) j(i * d + i, k * d + k) = 1.0;
  return j;
}

ComplexMatrix depolarizing_choi(std::size_t d) {
  ComplexMatrix j = ComplexMatrix::identity(d * d);
  j *= cplx(1.0 / static_cast<double>(d), 0.0);
  return j;
}

// Mirror step on the set {J PSD, Tr_B J = I}: exponentiate along the
// (natural-log) gradient direction, then restore the partial-trace constraint
// by a symmetric congruence.
ComplexMatrix retract(const ComplexMatrix& j, const ComplexMatrix& grad,
                      double t, std::size_t dA, std::size_t dB) {
  ComplexMatrix m = hermitian_function(j, [](double x) {
    return std::log(std::max(x, 1e-30));
  });
  m -= cplx(t, 0.0) * grad;
  // shift spectrum for a safe exp
  double top = eig_hermitian(m).values.front();
  ComplexMatrix x = hermitian_function(
      m, [top](double v) { return std::exp(v - top); });
  ComplexMatrix y = partial_trace(x, {dA, dB}, {0});
  ComplexMatrix s = matrix_inv_sqrt_psd(y, 1e-30);
  ComplexMatrix lift = tensor(s, ComplexMatrix::identity(dB));
  return lift * x * lift.adjoint();
}

// Euclidean step with alternating projections back onto
// {J PSD, Tr_B J = I}; used as a fallback when the mirror step wedges near
// the boundary of the cone.
ComplexMatrix euclidean_retract(const ComplexMatrix& j,
                                const ComplexMatrix& grad, double t,
                                std::size_t dA, std::size_t dB) {
  ComplexMatrix x = j;
  ComplexMatrix step = grad;
  step *= cplx(t, 0.0);
  x -= step;
  ComplexMatrix idA = ComplexMatrix::identity(dA);
  ComplexMatrix idB = ComplexMatrix::identity(dB);
  for (int round = 0; round < 20; ++round) {
    x = hermitian_function(x, [](double v) { return std::max(v, 0.0); });
    ComplexMatrix slack = partial_trace(x, {dA, dB}, {0}) - idA;
    slack *= cplx(1.0 / static_cast<double>(dB), 0.0);
    x -= tensor(slack, idB);
  }
  // finish PSD, then restore the partial trace exactly by congruence so the
  // result is a valid Choi operator rather than merely close to one
  x = hermitian_function(x, [](double v) { return std::max(v, 0.0); });
  ComplexMatrix y = partial_trace(x, {dA, dB}, {0});
  ComplexMatrix s = matrix_inv_sqrt_psd(y, 1e-30);
  ComplexMatrix lift = tensor(s, idB);
  return lift * x * lift.adjoint();
}

struct InnerResult {
  ComplexMatrix j;
  double mi = 0.0;
  double fe = 0.0;
  double gap = 0.0;
};

ComplexMatrix interior_start(std::size_t dA) {
  ComplexMatrix j = identity_choi(dA);
  j *= cplx(0.99, 0.0);
  ComplexMatrix mix = depolarizing_choi(dA);
  mix *= cplx(0.01, 0.0);
  j += mix;
  return j;
}

InnerResult minimize_from(const SourceContext& ctx, double lambda,
                          const SolverConfig& config, ComplexMatrix j) {
  std::size_t dA = ctx.dA, dB = ctx.dB;
  auto objective = [&](const ComplexMatrix& x) {
    return ctx.mi(x) + lambda * (1.0 - ctx.fe(x));
  };
  auto gradient = [&](const ComplexMatrix& x) {
    ComplexMatrix g = ctx.mi_grad(x);
    g -= cplx(lambda, 0.0) * ctx.W;
    // drop the component normal to the partial-trace constraint; without this
    // the mirror step fights the renormalization and stalls short of optimum
    ComplexMatrix m = partial_trace(g, {dA, dB}, {0});
    m *= cplx(1.0 / static_cast<double>(dB), 0.0);
    g -= tensor(m, ComplexMatrix::identity(dB));
    return g;
  };

  const double probe = 0.1;
  double f = objective(j);
  double t = 0.5;
  double gap = std::numeric_limits<double>::infinity();
  int stagnant = 0;
  for (std::size_t iter = 0; iter < config.max_iters; ++iter) {
    ComplexMatrix g = gradient(j);
    gap = (retract(j, g, probe, dA, dB) - j).frobenius_norm() / probe;
    if (gap <= config.tol) break;
    bool moved = false;
    double f_before = f;
    while (t > 1e-14) {
      ComplexMatrix jn = retract(j, g, t, dA, dB);
      double fn = objective(jn);
      if (fn <= f - 1e-14) {
        j = std::move(jn);
        f = fn;
        moved = true;
        t = std::min(t * 1.3, 8.0);
        break;
      }
      t *= 0.5;
    }
    if (!moved) {
      // mirror steps can wedge near the boundary of the cone; a plain
      // projected-gradient step is immune to that geometry
      for (double te = 0.25; te > 1e-14; te *= 0.5) {
        ComplexMatrix jn = euclidean_retract(j, g, te, dA, dB);
        double fn = objective(jn);
        if (fn <= f - 1e-14) {
          j = std::move(jn);
          f = fn;
          moved = true;
          t = std::max(t, 1e-3);
          break;
        }
      }
    }
    if (!moved) break;  // stalled at numerical precision
    // the probe gap bottoms out at a small step-size artefact even once the
    // objective has converged; detect that via objective stagnation
    stagnant = (f_before - f < 1e-11) ? stagnant + 1 : 0;
    if (stagnant >= 30) break;
  }
  InnerResult r;
  r.mi = ctx.mi(j);
  r.fe = ctx.fe(j);
  r.gap = gap;
  r.j = std::move(j);
  return r;
}

InnerResult minimize_lagrangian(const SourceContext& ctx, double lambda,
                                const SolverConfig& config,
                                const ComplexMatrix* warm) {
  const double residual_cap = std::max(1e3 * config.tol, 1e-2);
  if (warm) {
    InnerResult r = minimize_from(ctx, lambda, config, *warm);
    if (r.gap <= residual_cap) return r;
    // a warm start carried over from a nearby multiplier can wedge the line
    // search; fall through to the interior start before giving up
  }
  InnerResult r = minimize_from(ctx, lambda, config, interior_start(ctx.dA));
  if (r.gap > residual_cap)
    throw SolverDiverged("inner solve stalled at stationarity residual " +
                         std::to_string(r.gap) + " (multiplier " +
                         std::to_string(lambda) + ")");
  return r;
}

RDPoint make_point(const SourceContext& ctx, double D, double lambda,
                   const InnerResult& in) {
  RDPoint pt;
  pt.D = D;
  pt.rate = std::max(in.mi, 0.0);
  pt.lambda = lambda;
  pt.choi = ChoiMatrix{ctx.dA, ctx.dB, in.j};
  pt.gap = in.gap;
  pt.achieved_distortion = 1.0 - in.fe;
  pt.constraint_active = std::abs(pt.achieved_distortion - D) <= 1e-6;
  return pt;
}

}  // namespace

ClassicalSource::ClassicalSource(std::vector<double> p,
                                 std::vector<std::vector<double>> d)
    : pmf(std::move(p)), dist(std::move(d)) {
  double sum = 0.0;
  for (double x : pmf) {
    if (!(x >= 0.0)) throw InvalidParameter("pmf entries must be >= 0");
    sum += x;
  }
  if (std::abs(sum - 1.0) > 1e-12) throw InvalidParameter("pmf must sum to 1");
  if (dist.size() != pmf.size())
    throw DimensionMismatch("distortion matrix rows must match the alphabet");
  std::size_t cols = dist.empty() ? 0 : dist.front().size();
  for (const auto& row : dist) {
    if (row.size() != cols) throw DimensionMismatch("ragged distortion matrix");
    for (double x : row)
      if (!(x >= 0.0)) throw InvalidParameter("distortion entries must be >= 0");
  }
  if (cols == 0) throw InvalidParameter("empty reproduction alphabet");
}

ComplexMatrix fe_operator(const DensityMatrix& rho) {
  return SourceContext(rho).W;
}

double fe_of_choi(const DensityMatrix& rho, const ChoiMatrix& j) {
  if (j.dim_in != rho.dim() || j.dim_out != rho.dim())
    throw DimensionMismatch("fe_of_choi dims");
  return SourceContext(rho).fe(j.mat);
}

double mi_of_choi(const DensityMatrix& rho, const ChoiMatrix& j) {
  if (j.dim_in != rho.dim())
    throw DimensionMismatch("mi_of_choi dims");
  SourceContext ctx(rho);
  if (j.dim_out != ctx.dB) {
    // general output dim: evaluate directly through the channel form
    BipartiteState w(ctx.dR, j.dim_out, [&] {
      QuantumChannel n = channel_of_choi(j);
      ComplexMatrix proj = ctx.p.projector();
      ComplexMatrix out(ctx.dR * j.dim_out, ctx.dR * j.dim_out);
      ComplexMatrix idR = ComplexMatrix::identity(ctx.dR);
      for (const auto& k : n.kraus()) {
        ComplexMatrix lifted = tensor(idR, k);
        out += lifted * proj * lifted.adjoint();
      }
      return DensityMatrix(out);
    }());
    return mutual_information(w);
  }
  return ctx.mi(j.mat);
}

ComplexMatrix mi_gradient_choi(const DensityMatrix& rho, const ChoiMatrix& j) {
  if (j.dim_in != rho.dim() || j.dim_out != rho.dim())
    throw DimensionMismatch("mi_gradient_choi dims");
  return SourceContext(rho).mi_grad(j.mat);
}

double zero_rate_threshold(const DensityMatrix& rho) {
  double top = eig_hermitian(rho.mat()).values.front();
  return 1.0 - top * top;
}

RDPoint solve_lagrangian(const DensityMatrix& rho, double lambda,
                         const SolverConfig& config,
                         const ChoiMatrix* warm_start) {
  SourceContext ctx(rho);
  InnerResult in = minimize_lagrangian(
      ctx, lambda, config, warm_start ? &warm_start->mat : nullptr);
  return make_point(ctx, 1.0 - in.fe, lambda, in);
}

RDPoint solve_r_eac(const DensityMatrix& rho, double D,
                    const SolverConfig& config) {
  if (!(D >= 0.0) || D >= 1.0)
    throw InvalidDistortion("distortion budget must lie in [0, 1)");
  SourceContext ctx(rho);

  if (D <= 1e-12) {
    // perfect transmission: only the identity (on the support) is feasible
    InnerResult in;
    in.j = identity_choi(ctx.dA);
    in.mi = ctx.mi(in.j);
    in.fe = ctx.fe(in.j);
    in.gap = 0.0;
    RDPoint pt = make_point(ctx, D, 0.0, in);
    pt.constraint_active = true;
    return pt;
  }

  double d0 = zero_rate_threshold(rho);
  if (D >= d0 - 1e-12) {
    // a constant channel emitting the top eigenvector already meets D
    auto e = eig_hermitian(rho.mat());
    QuantumChannel best =
        constant_channel(DensityMatrix(outer(e.column(0), e.column(0))));
    InnerResult in;
    in.j = choi_of_channel(best).mat;
    in.mi = 0.0;
    in.fe = ctx.fe(in.j);
    in.gap = 0.0;
    return make_point(ctx, D, 0.0, in);
  }

  // Bisect the multiplier; larger lambda buys lower distortion.
  double lo = 0.0, hi = 1.0;
  InnerResult cur = minimize_lagrangian(ctx, hi, config, nullptr);
  std::size_t doublings = 0;
  while (1.0 - cur.fe > D && doublings++ < 60) {
    hi *= 2.0;
    cur = minimize_lagrangian(ctx, hi, config, &cur.j);
  }
  if (1.0 - cur.fe > D)
    throw SolverDiverged("could not bracket the distortion constraint");

  InnerResult best = cur;
  double best_lambda = hi;
  double lower_bound = cur.mi + hi * ((1.0 - cur.fe) - D);
  for (std::size_t iter = 0; iter < 200; ++iter) {
    if (std::max(best.mi, 0.0) - lower_bound <= config.rate_tol) break;
    double mid = 0.5 * (lo + hi);
    cur = minimize_lagrangian(ctx, mid, config, &cur.j);
    double d_mid = 1.0 - cur.fe;
    lower_bound = std::max(lower_bound, cur.mi + mid * (d_mid - D));
    if (d_mid <= D) {
      if (cur.mi < best.mi) {
        best = cur;
        best_lambda = mid;
      }
      hi = mid;
    } else {
      lo = mid;
    }
  }
  return make_point(ctx, D, best_lambda, best);
}

RDPoint solve_r_eaq(const DensityMatrix& rho, double D,
                    const SolverConfig& config) {
  RDPoint pt = solve_r_eac(rho, D, config);
  pt.rate *= 0.5;
  pt.lambda *= 0.5;
  return pt;
}

RDCurve rd_curve(const DensityMatrix& rho, const std::vector<double>& d_grid,
                 RDFlavor flavor, const SolverConfig& config) {
  if (flavor == RDFlavor::classical)
    throw InvalidParameter("classical curves go through classical_rd");
  if (!std::is_sorted(d_grid.begin(), d_grid.end()))
    throw InvalidParameter("distortion grid must be sorted");
  RDCurve curve{rho, {}, flavor, false, false};
  curve.points.reserve(d_grid.size());
  for (double D : d_grid)
    curve.points.push_back(flavor == RDFlavor::eaq ? solve_r_eaq(rho, D, config)
                                                   : solve_r_eac(rho, D, config));
  curve.monotone_ok = true;
  for (std::size_t i = 1; i < curve.points.size(); ++i)
    if (curve.points[i].rate > curve.points[i - 1].rate + 1e-4)
      curve.monotone_ok = false;
  curve.convex_ok = true;
  for (std::size_t i = 2; i < curve.points.size(); ++i) {
    double h1 = curve.points[i - 1].D - curve.points[i - 2].D;
    double h2 = curve.points[i].D - curve.points[i - 1].D;
    if (std::abs(h1 - h2) > 1e-9) continue;  // only equispaced triples
    double mid = 0.5 * (curve.points[i - 2].rate + curve.points[i].rate);
    if (curve.points[i - 1].rate > mid + 1e-4) curve.convex_ok = false;
  }
  return curve;
}

std::vector<RDPoint> rd_curve_lambda_sweep(const DensityMatrix& rho,
                                           const std::vector<double>& lambdas,
                                           const SolverConfig& config) {
  SourceContext ctx(rho);
  std::vector<RDPoint> points;
  points.reserve(lambdas.size());
  const ComplexMatrix* warm = nullptr;
  for (double lam : lambdas) {
    InnerResult in = minimize_lagrangian(ctx, lam, config, warm);
    points.push_back(make_point(ctx, 1.0 - in.fe, lam, in));
    warm = &points.back().choi.mat;
  }
  return points;
}

double classical_rd(const ClassicalSource& source, double D,
                    const SolverConfig& config) {
  std::size_t nu = source.pmf.size();
  std::size_t nv = source.dist.front().size();
  if (!(D >= 0.0)) throw InvalidDistortion("negative distortion budget");

  // rate 0 once a single reproduction letter meets the budget
  double best_const = std::numeric_limits<double>::infinity();
  for (std::size_t v = 0; v < nv; ++v) {
    double e = 0.0;
    for (std::size_t u = 0; u < nu; ++u) e += source.pmf[u] * source.dist[u][v];
    best_const = std::min(best_const, e);
  }
  if (D >= best_const - 1e-12) return 0.0;

  double floor = 0.0;  // minimum achievable distortion
  for (std::size_t u = 0; u < nu; ++u) {
    double m = std::numeric_limits<double>::infinity();
    for (std::size_t v = 0; v < nv; ++v) m = std::min(m, source.dist[u][v]);
    floor += source.pmf[u] * m;
  }
  if (D < floor - 1e-9)
    throw InvalidDistortion("distortion budget below the achievable minimum");

  // Blahut-Arimoto inner solve at fixed multiplier s (nats per distortion).
  auto ba = [&](double s, double& rate_bits, double& avg_dist) {
    std::vector<double> q(nv, 1.0 / static_cast<double>(nv));
    std::vector<std::vector<double>> cond(nu, std::vector<double>(nv, 0.0));
    for (std::size_t it = 0; it < config.max_iters; ++it) {
      for (std::size_t u = 0; u < nu; ++u) {
        double z = 0.0;
        for (std::size_t v = 0; v < nv; ++v) {
          cond[u][v] = q[v] * std::exp(-s * source.dist[u][v]);
          z += cond[u][v];
        }
        for (std::size_t v = 0; v < nv; ++v) cond[u][v] /= z;
      }
      std::vector<double> qn(nv, 0.0);
      for (std::size_t u = 0; u < nu; ++u)
        for (std::size_t v = 0; v < nv; ++v)
          qn[v] += source.pmf[u] * cond[u][v];
      double delta = 0.0;
      for (std::size_t v = 0; v < nv; ++v)
        delta = std::max(delta, std::abs(qn[v] - q[v]));
      q = std::move(qn);
      if (delta < 1e-13) break;
    }
    rate_bits = 0.0;
    avg_dist = 0.0;
    for (std::size_t u = 0; u < nu; ++u)
      for (std::size_t v = 0; v < nv; ++v) {
        double w = source.pmf[u] * cond[u][v];
        if (w > 0.0 && q[v] > 0.0)
          rate_bits += w * std::log2(cond[u][v] / q[v]);
        avg_dist += w * source.dist[u][v];
      }
  };

  double lo = 0.0, hi = 1.0, rate, dist;
  ba(hi, rate, dist);
  std::size_t doublings = 0;
  while (dist > D && doublings++ < 60) {
    hi *= 2.0;
    ba(hi, rate, dist);
  }
  if (dist > D + 1e-12)
    throw SolverDiverged("could not bracket the distortion constraint");
  double best_rate = rate;
  double lower = rate + hi * kLog2e * (dist - D);
  for (std::size_t iter = 0; iter < 200; ++iter) {
    if (best_rate - lower <= config.rate_tol) break;
    double mid = 0.5 * (lo + hi);
    ba(mid, rate, dist);
    lower = std::max(lower, rate + mid * kLog2e * (dist - D));
    if (dist <= D) {
      best_rate = std::min(best_rate, rate);
      hi = mid;
    } else {
      lo = mid;
    }
  }
  return std::max(best_rate, 0.0);
}

}  // namespace qrate
