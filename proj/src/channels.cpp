#include "qrate/channels.hpp"

#include <cmath>

#include "qrate/errors.hpp"

namespace qrate {

QuantumChannel::QuantumChannel(std::size_t dim_in, std::size_t dim_out,
                               std::vector<ComplexMatrix> kraus)
    : dim_in_(dim_in), dim_out_(dim_out), kraus_(std::move(kraus)) {
  if (kraus_.empty()) throw NotCPTP("no Kraus operators");
  ComplexMatrix sum(dim_in_, dim_in_);
  for (const auto& k : kraus_) {
    if (k.rows() != dim_out_ || k.cols() != dim_in_)
      throw DimensionMismatch("Kraus operator shape");
    sum += k.adjoint() * k;
  }
  sum -= ComplexMatrix::identity(dim_in_);
  if (sum.max_abs() > 1e-9) throw NotCPTP("sum K^dagger K differs from identity");
}

ComplexMatrix QuantumChannel::apply(const ComplexMatrix& x) const {
  if (x.rows() != dim_in_ || x.cols() != dim_in_)
    throw DimensionMismatch("channel input shape");
  ComplexMatrix r(dim_out_, dim_out_);
  for (const auto& k : kraus_) r += k * x * k.adjoint();
  return r;
}

ComplexMatrix QuantumChannel::apply_adjoint(const ComplexMatrix& x) const {
  if (x.rows() != dim_out_ || x.cols() != dim_out_)
    throw DimensionMismatch("adjoint channel input shape");
  ComplexMatrix r(dim_in_, dim_in_);
  for (const auto& k : kraus_) r += k.adjoint() * x * k;
  return r;
}

DensityMatrix apply_channel(const QuantumChannel& n, const DensityMatrix& rho) {
  if (rho.dim() != n.dim_in()) throw DimensionMismatch("apply_channel dims");
  return DensityMatrix(n.apply(rho.mat()));
}

void ChoiMatrix::validate() const {
  const std::size_t d = dim_in * dim_out;
  if (mat.rows() != d || mat.cols() != d)
    throw NotCPTP("Choi matrix shape inconsistent with dims");
  if (!mat.is_hermitian(1e-9)) throw NotCPTP("Choi matrix not Hermitian");
  EigResult e = eig_hermitian(mat);
  if (e.values.back() < -1e-9) throw NotCPTP("Choi matrix not PSD");
  ComplexMatrix tr_out = partial_trace(mat, {dim_in, dim_out}, {0});
  tr_out -= ComplexMatrix::identity(dim_in);
  if (tr_out.max_abs() > 1e-9) throw NotCPTP("Tr_out J differs from identity");
}

ComplexMatrix ChoiMatrix::apply(const ComplexMatrix& x) const {
  if (x.rows() != dim_in || x.cols() != dim_in)
    throw DimensionMismatch("Choi apply input shape");
  ComplexMatrix r(dim_out, dim_out);
  for (std::size_t a = 0; a < dim_in; ++a)
    for (std::size_t ap = 0; ap < dim_in; ++ap) {
      const cplx w = x(a, ap);
      if (w == cplx(0.0, 0.0)) continue;
      for (std::size_t b = 0; b < dim_out; ++b)
        for (std::size_t bp = 0; bp < dim_out; ++bp)
          r(b, bp) += w * mat(a * dim_out + b, ap * dim_out + bp);
    }
  return r;
}

ChoiMatrix choi_of_channel(const QuantumChannel& n) {
  const std::size_t di = n.dim_in(), dout = n.dim_out();
  ChoiMatrix j{di, dout, ComplexMatrix(di * dout, di * dout)};
  for (const auto& k : n.kraus()) {
    // w[(a,b)] = K[b,a]; J += w w^dagger
    std::vector<cplx> w(di * dout);
    for (std::size_t a = 0; a < di; ++a)
      for (std::size_t b = 0; b < dout; ++b) w[a * dout + b] = k(b, a);
    j.mat += outer(w, w);
  }
  return j;
}

QuantumChannel channel_of_choi(const ChoiMatrix& j) {
  j.validate();
  EigResult e = eig_hermitian(j.mat);
  std::vector<ComplexMatrix> kraus;
  for (std::size_t k = 0; k < e.values.size(); ++k) {
    if (e.values[k] <= 1e-10) continue;
    const double amp = std::sqrt(e.values[k]);
    ComplexMatrix km(j.dim_out, j.dim_in);
    for (std::size_t a = 0; a < j.dim_in; ++a)
      for (std::size_t b = 0; b < j.dim_out; ++b)
        km(b, a) = amp * e.vectors(a * j.dim_out + b, k);
    kraus.push_back(std::move(km));
  }
  if (kraus.empty()) throw NotCPTP("Choi matrix has no significant spectrum");
  return QuantumChannel(j.dim_in, j.dim_out, std::move(kraus));
}

StinespringResult stinespring(const QuantumChannel& n) {
  const std::size_t di = n.dim_in(), dout = n.dim_out();
  const std::size_t denv = n.kraus().size();
  // V|x> = sum_e (K_e|x>) (x) |e>, environment least significant.
  ComplexMatrix v(dout * denv, di);
  for (std::size_t e = 0; e < denv; ++e)
    for (std::size_t b = 0; b < dout; ++b)
      for (std::size_t a = 0; a < di; ++a)
        v(b * denv + e, a) = n.kraus()[e](b, a);

  // Complementary channel: Kraus C_b = (<b| (x) I_E) V.
  std::vector<ComplexMatrix> comp;
  comp.reserve(dout);
  for (std::size_t b = 0; b < dout; ++b) {
    ComplexMatrix c(denv, di);
    for (std::size_t e = 0; e < denv; ++e)
      for (std::size_t a = 0; a < di; ++a) c(e, a) = v(b * denv + e, a);
    comp.push_back(std::move(c));
  }
  return StinespringResult{std::move(v), denv,
                           QuantumChannel(di, denv, std::move(comp))};
}

QuantumChannel constant_channel(const DensityMatrix& sigma) {
  EigResult e = eig_hermitian(sigma.mat());
  const std::size_t d = sigma.dim();
  std::vector<ComplexMatrix> kraus;
  for (std::size_t i = 0; i < d; ++i) {
    if (e.values[i] <= 1e-14) continue;
    const double amp = std::sqrt(e.values[i]);
    for (std::size_t j = 0; j < d; ++j) {
      ComplexMatrix k(d, d);
      for (std::size_t b = 0; b < d; ++b) k(b, j) = amp * e.vectors(b, i);
      kraus.push_back(std::move(k));
    }
  }
  return QuantumChannel(d, d, std::move(kraus));
}

QuantumChannel standard_channel(ChannelKind kind, double param, std::size_t dim) {
  switch (kind) {
    case ChannelKind::Identity: {
      std::vector<ComplexMatrix> k{ComplexMatrix::identity(dim)};
      return QuantumChannel(dim, dim, std::move(k));
    }
    case ChannelKind::CompletelyDepolarizing: {
      std::vector<ComplexMatrix> kraus;
      const double amp = 1.0 / std::sqrt(static_cast<double>(dim));
      for (std::size_t i = 0; i < dim; ++i)
        for (std::size_t j = 0; j < dim; ++j) {
          ComplexMatrix k(dim, dim);
          k(i, j) = amp;
          kraus.push_back(std::move(k));
        }
      return QuantumChannel(dim, dim, std::move(kraus));
    }
    case ChannelKind::Depolarizing: {
      const double p = param;
      if (p < 0.0 || p > 1.0)
        throw InvalidParameter("depolarizing probability out of range");
      ComplexMatrix x(2, 2), y(2, 2), z(2, 2);
      x(0, 1) = 1.0;
      x(1, 0) = 1.0;
      y(0, 1) = cplx(0.0, -1.0);
      y(1, 0) = cplx(0.0, 1.0);
      z(0, 0) = 1.0;
      z(1, 1) = -1.0;
      std::vector<ComplexMatrix> kraus;
      kraus.push_back(std::sqrt(1.0 - 3.0 * p / 4.0) *
                      ComplexMatrix::identity(2));
      kraus.push_back(std::sqrt(p / 4.0) * x);
      kraus.push_back(std::sqrt(p / 4.0) * y);
      kraus.push_back(std::sqrt(p / 4.0) * z);
      return QuantumChannel(2, 2, std::move(kraus));
    }
    case ChannelKind::Dephasing: {
      const double p = param;
      if (p < 0.0 || p > 1.0)
        throw InvalidParameter("dephasing probability out of range");
      ComplexMatrix z(2, 2);
      z(0, 0) = 1.0;
      z(1, 1) = -1.0;
      std::vector<ComplexMatrix> kraus;
      kraus.push_back(std::sqrt(1.0 - p) * ComplexMatrix::identity(2));
      kraus.push_back(std::sqrt(p) * z);
      return QuantumChannel(2, 2, std::move(kraus));
    }
    case ChannelKind::AmplitudeDamping: {
      const double g = param;
      if (g < 0.0 || g > 1.0) throw InvalidParameter("damping out of range");
      ComplexMatrix k0(2, 2), k1(2, 2);
      k0(0, 0) = 1.0;
      k0(1, 1) = std::sqrt(1.0 - g);
      k1(0, 1) = std::sqrt(g);
      std::vector<ComplexMatrix> kraus{k0, k1};
      return QuantumChannel(2, 2, std::move(kraus));
    }
    case ChannelKind::Erasure: {
      const double p = param;
      if (p < 0.0 || p > 1.0)
        throw InvalidParameter("erasure probability out of range");
      ComplexMatrix keep(3, 2), e0(3, 2), e1(3, 2);
      keep(0, 0) = std::sqrt(1.0 - p);
      keep(1, 1) = std::sqrt(1.0 - p);
      e0(2, 0) = std::sqrt(p);
      e1(2, 1) = std::sqrt(p);
      std::vector<ComplexMatrix> kraus{keep, e0, e1};
      return QuantumChannel(2, 3, std::move(kraus));
    }
    case ChannelKind::Constant:
      throw InvalidParameter("use constant_channel(sigma) for constant maps");
  }
  throw InvalidParameter("unknown channel kind");
}

QuantumChannel mix_channels(const std::vector<QuantumChannel>& channels,
                            const std::vector<double>& weights) {
  if (channels.empty() || channels.size() != weights.size())
    throw InvalidParameter("mix_channels inputs");
  const std::size_t di = channels[0].dim_in(), dout = channels[0].dim_out();
  std::vector<ComplexMatrix> kraus;
  for (std::size_t c = 0; c < channels.size(); ++c) {
    if (channels[c].dim_in() != di || channels[c].dim_out() != dout)
      throw DimensionMismatch("mix_channels dims");
    if (weights[c] < 0.0) throw InvalidParameter("negative mixture weight");
    const double amp = std::sqrt(weights[c]);
    for (const auto& k : channels[c].kraus()) {
      if (weights[c] == 0.0) continue;
      kraus.push_back(amp * k);
    }
  }
  return QuantumChannel(di, dout, std::move(kraus));
}

}  // namespace qrate
