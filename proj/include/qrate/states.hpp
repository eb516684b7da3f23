#pragma once

#include <vector>

#include "qrate/complex_matrix.hpp"

namespace qrate {

/// Hermitian, PSD, unit-trace operator. Validated on construction:
/// hermiticity within 1e-10 (max entry), min eigenvalue >= -1e-10,
/// |trace - 1| <= 1e-10.
class DensityMatrix {
 public:
  explicit DensityMatrix(ComplexMatrix mat);

  std::size_t dim() const { return mat_.rows(); }
  const ComplexMatrix& mat() const { return mat_; }

  static DensityMatrix maximally_mixed(std::size_t d);
  static DensityMatrix pure(const std::vector<cplx>& amplitudes);
  static DensityMatrix diagonal(const std::vector<double>& probs);

 private:
  ComplexMatrix mat_;
};

/// Pure bipartite vector on R (x) A whose partial trace over R recovers a
/// given source state.
struct Purification {
  std::size_t dim_R = 0;
  std::size_t dim_A = 0;
  std::vector<cplx> vec;  // length dim_R * dim_A, R most significant
  DensityMatrix source;

  ComplexMatrix projector() const;  // |psi><psi|
};

/// Canonical purification |psi> = sum_i sqrt(lambda_i) |i>_R |v_i>_A with
/// dim_R = rank (eigenvalues above 1e-12 kept).
Purification purify(const DensityMatrix& rho);

}  // namespace qrate
