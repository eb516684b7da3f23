#include "qrate/random.hpp"

#include <cmath>

#include "qrate/errors.hpp"

namespace qrate {

ComplexMatrix random_ginibre(Rng& rng, std::size_t rows, std::size_t cols) {
  std::normal_distribution<double> g(0.0, 1.0);
  ComplexMatrix m(rows, cols);
  for (std::size_t i = 0; i < rows; ++i)
    for (std::size_t j = 0; j < cols; ++j) m(i, j) = cplx(g(rng), g(rng));
  return m;
}

ComplexMatrix random_hermitian(Rng& rng, std::size_t dim, double scale) {
  ComplexMatrix g = random_ginibre(rng, dim, dim);
  ComplexMatrix h = g + g.adjoint();
  h *= cplx(0.5 * scale, 0.0);
  return h;
}

ComplexMatrix orthonormalize_columns(const ComplexMatrix& m) {
  ComplexMatrix q = m;
  for (std::size_t j = 0; j < q.cols(); ++j) {
    for (int pass = 0; pass < 2; ++pass) {
      for (std::size_t k = 0; k < j; ++k) {
        cplx dot = 0.0;
        for (std::size_t i = 0; i < q.rows(); ++i)
          dot += std::conj(q(i, k)) * q(i, j);
        for (std::size_t i = 0; i < q.rows(); ++i) q(i, j) -= dot * q(i, k);
      }
    }
    double norm = 0.0;
    for (std::size_t i = 0; i < q.rows(); ++i) norm += std::norm(q(i, j));
    norm = std::sqrt(norm);
    if (norm < 1e-12) throw InvalidParameter("dependent columns");
    for (std::size_t i = 0; i < q.rows(); ++i) q(i, j) *= 1.0 / norm;
  }
  return q;
}

ComplexMatrix random_effect(Rng& rng, std::size_t dim) {
  ComplexMatrix u = orthonormalize_columns(random_ginibre(rng, dim, dim));
  std::uniform_real_distribution<double> uni(0.0, 1.0);
  ComplexMatrix p(dim, dim);
  for (std::size_t k = 0; k < dim; ++k) {
    const double lam = uni(rng);
    for (std::size_t i = 0; i < dim; ++i)
      for (std::size_t j = 0; j < dim; ++j)
        p(i, j) += lam * u(i, k) * std::conj(u(j, k));
  }
  return p;
}

std::vector<cplx> random_pure_vector(Rng& rng, std::size_t dim) {
  std::normal_distribution<double> g(0.0, 1.0);
  std::vector<cplx> v(dim);
  double norm2 = 0.0;
  for (auto& x : v) {
    x = cplx(g(rng), g(rng));
    norm2 += std::norm(x);
  }
  const double inv = 1.0 / std::sqrt(norm2);
  for (auto& x : v) x *= inv;
  return v;
}

DensityMatrix random_density(Rng& rng, std::size_t dim) {
  ComplexMatrix g = random_ginibre(rng, dim, dim);
  ComplexMatrix m = g * g.adjoint();
  const double tr = m.trace().real();
  m *= cplx(1.0 / tr, 0.0);
  return DensityMatrix(std::move(m));
}

QuantumChannel random_channel(Rng& rng, std::size_t dim_in, std::size_t dim_out,
                              std::size_t kraus_rank) {
  if (kraus_rank == 0 || dim_out * kraus_rank < dim_in)
    throw InvalidParameter("kraus_rank too small for an isometry");
  ComplexMatrix v =
      orthonormalize_columns(random_ginibre(rng, dim_out * kraus_rank, dim_in));
  std::vector<ComplexMatrix> kraus;
  for (std::size_t e = 0; e < kraus_rank; ++e) {
    ComplexMatrix k(dim_out, dim_in);
    for (std::size_t b = 0; b < dim_out; ++b)
      for (std::size_t a = 0; a < dim_in; ++a) k(b, a) = v(b * kraus_rank + e, a);
    kraus.push_back(std::move(k));
  }
  return QuantumChannel(dim_in, dim_out, std::move(kraus));
}

ComplexMatrix random_unitary(Rng& rng, std::size_t dim) {
  return orthonormalize_columns(random_ginibre(rng, dim, dim));
}

}  // namespace qrate
