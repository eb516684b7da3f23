#include "qrate/block_distortion.hpp"

#include <cmath>

#include "qrate/errors.hpp"

namespace qrate {

namespace {

std::size_t ipow(std::size_t b, std::size_t e) {
  std::size_t r = 1;
  while (e--) r *= b;
  return r;
}

// Permutation regrouping (X1 Y1)(X2 Y2)...(Xn Yn) -> (X1..Xn)(Y1..Yn).
std::vector<std::size_t> interleave_to_blocks(std::size_t n) {
  std::vector<std::size_t> perm(2 * n);
  for (std::size_t k = 0; k < n; ++k) {
    perm[k] = 2 * k;          // new slot k <- X_{k+1}
    perm[n + k] = 2 * k + 1;  // new slot n+k <- Y_{k+1}
  }
  return perm;
}

ComplexMatrix tensor_power(const ComplexMatrix& m, std::size_t n) {
  ComplexMatrix out = ComplexMatrix::identity(1);
  for (std::size_t k = 0; k < n; ++k) out = tensor(out, m);
  return out;
}

}  // namespace

BlockChannel::BlockChannel(std::size_t copies, std::size_t single_dim,
                           QuantumChannel ch)
    : n(copies), d(single_dim), channel(std::move(ch)) {
  if (n == 0 || d == 0) throw InvalidParameter("block channel needs n, d >= 1");
  std::size_t dn = ipow(d, n);
  if (channel.dim_in() != dn || channel.dim_out() != dn)
    throw DimensionMismatch("block channel dims must equal d^n on both sides");
}

BlockChannel product_block(const QuantumChannel& n_single, std::size_t copies) {
  if (n_single.dim_in() != n_single.dim_out())
    throw DimensionMismatch("product block needs dim_in == dim_out");
  std::vector<ComplexMatrix> kraus = {ComplexMatrix::identity(1)};
  for (std::size_t c = 0; c < copies; ++c) {
    std::vector<ComplexMatrix> next;
    next.reserve(kraus.size() * n_single.kraus().size());
    for (const auto& a : kraus)
      for (const auto& k : n_single.kraus()) next.push_back(tensor(a, k));
    kraus = std::move(next);
  }
  std::size_t dn = ipow(n_single.dim_in(), copies);
  return BlockChannel(copies, n_single.dim_in(),
                      QuantumChannel(dn, dn, std::move(kraus)));
}

QuantumChannel marginal_channel(const DensityMatrix& rho, const BlockChannel& f,
                                std::size_t i) {
  if (rho.dim() != f.d) throw DimensionMismatch("marginal source dim");
  if (i < 1 || i > f.n) throw IndexOutOfRange("marginal copy index");
  std::size_t d = f.d;
  std::vector<std::size_t> dims(f.n, d);

  ChoiMatrix j{d, d, ComplexMatrix(d * d, d * d)};
  for (std::size_t a = 0; a < d; ++a) {
    for (std::size_t ap = 0; ap < d; ++ap) {
      // matrix unit |a><a'| in slot i, the source everywhere else
      ComplexMatrix unit(d, d);
      unit(a, ap) = 1.0;
      ComplexMatrix block = ComplexMatrix::identity(1);
      for (std::size_t c = 1; c <= f.n; ++c)
        block = tensor(block, c == i ? unit : rho.mat());
      ComplexMatrix out =
          partial_trace(f.channel.apply(block), dims, {i - 1});
      for (std::size_t b = 0; b < d; ++b)
        for (std::size_t bp = 0; bp < d; ++bp)
          j.mat(a * d + b, ap * d + bp) = out(b, bp);
    }
  }
  // kill the tiny anti-Hermitian round-off before the CPTP check
  j.mat = 0.5 * (j.mat + j.mat.adjoint());
  return channel_of_choi(j);
}

double average_distortion(const DensityMatrix& rho, const BlockChannel& f) {
  if (rho.dim() != f.d) throw DimensionMismatch("average distortion source dim");
  double sum = 0.0;
  for (std::size_t i = 1; i <= f.n; ++i)
    sum += distortion(rho, marginal_channel(rho, f, i));
  return sum / static_cast<double>(f.n);
}

Lemma1Report lemma1_check(const DensityMatrix& rho,
                          const QuantumChannel& n_target,
                          const BlockChannel& f) {
  if (rho.dim() != f.d || n_target.dim_in() != f.d ||
      n_target.dim_out() != f.d)
    throw DimensionMismatch("lemma1 dims");
  Purification p = purify(rho);
  std::size_t dR = p.dim_R, dA = p.dim_A, n = f.n;
  if (ipow(dR * dA, n) > 64)
    throw BlockTooLarge("joint reference+output space exceeds dimension 64");

  // psi^{(x)n} with systems ordered R1 A1 ... Rn An, regrouped to R^n A^n
  std::vector<cplx> vec_n = {cplx(1.0, 0.0)};
  for (std::size_t c = 0; c < n; ++c) vec_n = tensor(vec_n, p.vec);
  std::vector<std::size_t> dims_inter;
  for (std::size_t c = 0; c < n; ++c) {
    dims_inter.push_back(dR);
    dims_inter.push_back(dA);
  }
  ComplexMatrix psi_n =
      permute_systems(outer(vec_n, vec_n), dims_inter, interleave_to_blocks(n));

  // sigma = (id_{R^n} (x) F_n)(psi^{(x)n})
  std::size_t dRn = ipow(dR, n);
  ComplexMatrix id_Rn = ComplexMatrix::identity(dRn);
  ComplexMatrix sigma(psi_n.rows(), psi_n.cols());
  for (const auto& k : f.channel.kraus()) {
    ComplexMatrix lifted = tensor(id_Rn, k);
    sigma += lifted * psi_n * lifted.adjoint();
  }

  // omega^{(x)n} on the same R^n B^n ordering
  ComplexMatrix omega(dR * dA, dR * dA);
  {
    ComplexMatrix proj = p.projector();
    ComplexMatrix id_R = ComplexMatrix::identity(dR);
    for (const auto& k : n_target.kraus()) {
      ComplexMatrix lifted = tensor(id_R, k);
      omega += lifted * proj * lifted.adjoint();
    }
  }
  ComplexMatrix omega_n =
      permute_systems(tensor_power(omega, n), dims_inter, interleave_to_blocks(n));

  Lemma1Report rep;
  rep.lhs = trace_norm_hermitian(sigma - omega_n);
  rep.dbar = average_distortion(rho, f);
  rep.d_target = distortion(rho, n_target);
  rep.bound_holds = rep.dbar <= rep.d_target + rep.lhs + 1e-9;
  return rep;
}

}  // namespace qrate
