#include "qrate/states.hpp"

#include <cmath>

#include "qrate/errors.hpp"

namespace qrate {

DensityMatrix::DensityMatrix(ComplexMatrix mat) : mat_(std::move(mat)) {
  if (mat_.rows() == 0 || mat_.rows() != mat_.cols())
    throw NotDensityMatrix("matrix not square");
  if (!mat_.all_finite()) throw NotDensityMatrix("non-finite entries");
  if (!mat_.is_hermitian(1e-10)) throw NotDensityMatrix("not Hermitian");
  if (std::abs(mat_.trace() - cplx(1.0, 0.0)) > 1e-10)
    throw NotDensityMatrix("trace differs from 1");
  EigResult e = eig_hermitian(mat_);
  if (e.values.back() < -1e-10)
    throw NotDensityMatrix("negative eigenvalue below tolerance");
}

DensityMatrix DensityMatrix::maximally_mixed(std::size_t d) {
  ComplexMatrix m = ComplexMatrix::identity(d);
  m *= cplx(1.0 / static_cast<double>(d), 0.0);
  return DensityMatrix(std::move(m));
}

DensityMatrix DensityMatrix::pure(const std::vector<cplx>& amplitudes) {
  double norm2 = 0.0;
  for (const auto& a : amplitudes) norm2 += std::norm(a);
  if (norm2 <= 0.0) throw NotDensityMatrix("zero state vector");
  ComplexMatrix m = outer(amplitudes, amplitudes);
  m *= cplx(1.0 / norm2, 0.0);
  return DensityMatrix(std::move(m));
}

DensityMatrix DensityMatrix::diagonal(const std::vector<double>& probs) {
  ComplexMatrix m(probs.size(), probs.size());
  for (std::size_t i = 0; i < probs.size(); ++i) m(i, i) = probs[i];
  return DensityMatrix(std::move(m));
}

ComplexMatrix Purification::projector() const { return outer(vec, vec); }

Purification purify(const DensityMatrix& rho) {
  EigResult e = eig_hermitian(rho.mat());
  const std::size_t d = rho.dim();
  std::size_t rank = 0;
  while (rank < d && e.values[rank] > 1e-12) ++rank;
  if (rank == 0) rank = 1;

  Purification p{rank, d, std::vector<cplx>(rank * d, cplx(0.0, 0.0)), rho};
  for (std::size_t i = 0; i < rank; ++i) {
    const double amp = std::sqrt(std::max(e.values[i], 0.0));
    for (std::size_t a = 0; a < d; ++a)
      p.vec[i * d + a] = amp * e.vectors(a, i);
  }
  return p;
}

}  // namespace qrate
