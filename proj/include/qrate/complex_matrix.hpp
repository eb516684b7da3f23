#pragma once

#include <complex>
#include <cstddef>
#include <functional>
#include <vector>

namespace qrate {

using cplx = std::complex<double>;

/// Dense complex matrix, row-major. All dimensions here are tiny (<= 64),
/// so everything is plain O(n^3) with no blocking.
class ComplexMatrix {
 public:
  ComplexMatrix() : rows_(0), cols_(0) {}
  ComplexMatrix(std::size_t rows, std::size_t cols)
      : rows_(rows), cols_(cols), data_(rows * cols, cplx(0.0, 0.0)) {}

  static ComplexMatrix identity(std::size_t n);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  cplx& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  const cplx& operator()(std::size_t i, std::size_t j) const {
    return data_[i * cols_ + j];
  }

  ComplexMatrix& operator+=(const ComplexMatrix& o);
  ComplexMatrix& operator-=(const ComplexMatrix& o);
  ComplexMatrix& operator*=(cplx s);

  ComplexMatrix adjoint() const;
  ComplexMatrix transpose() const;
  ComplexMatrix conjugate() const;
  cplx trace() const;

  double max_abs() const;
  double frobenius_norm() const;
  bool is_hermitian(double tol) const;
  bool all_finite() const;

  const std::vector<cplx>& data() const { return data_; }

 private:
  std::size_t rows_, cols_;
  std::vector<cplx> data_;
};

ComplexMatrix operator+(const ComplexMatrix& a, const ComplexMatrix& b);
ComplexMatrix operator-(const ComplexMatrix& a, const ComplexMatrix& b);
ComplexMatrix operator*(const ComplexMatrix& a, const ComplexMatrix& b);
ComplexMatrix operator*(cplx s, const ComplexMatrix& a);
std::vector<cplx> operator*(const ComplexMatrix& a, const std::vector<cplx>& v);

/// Kronecker product; composite index (i_a, i_b) with the left factor most
/// significant, i.e. row index = i_a * b.rows() + i_b.
ComplexMatrix tensor(const ComplexMatrix& a, const ComplexMatrix& b);
std::vector<cplx> tensor(const std::vector<cplx>& u, const std::vector<cplx>& v);

/// Partial trace of a square matrix over the systems NOT listed in `keep`.
/// `dims` are the subsystem dimensions, leftmost most significant; their
/// product must equal the matrix dimension. `keep` holds system indices in
/// increasing order; the result is ordered accordingly.
ComplexMatrix partial_trace(const ComplexMatrix& m,
                            const std::vector<std::size_t>& dims,
                            const std::vector<std::size_t>& keep);

/// Reorders subsystems of a square matrix: new slot s holds old system
/// perm[s].
ComplexMatrix permute_systems(const ComplexMatrix& m,
                              const std::vector<std::size_t>& dims,
                              const std::vector<std::size_t>& perm);

ComplexMatrix outer(const std::vector<cplx>& u, const std::vector<cplx>& v);

struct EigResult {
  std::vector<double> values;  // descending
  ComplexMatrix vectors;       // orthonormal columns, vectors.col(k) <-> values[k]
  std::vector<cplx> column(std::size_t k) const;
};

/// Hermitian eigendecomposition by cyclic Jacobi with complex rotations.
/// Throws NonHermitianInput if max |m - m^dagger| > 1e-8.
EigResult eig_hermitian(const ComplexMatrix& m);

/// f applied to the spectrum of a Hermitian matrix.
ComplexMatrix hermitian_function(const ComplexMatrix& m,
                                 const std::function<double(double)>& f);
ComplexMatrix matrix_exp_hermitian(const ComplexMatrix& m);
/// log2 with eigenvalues clamped below at `clamp` before taking the log.
ComplexMatrix matrix_log2_clamped(const ComplexMatrix& m, double clamp = 1e-300);
ComplexMatrix matrix_sqrt_psd(const ComplexMatrix& m);
ComplexMatrix matrix_inv_sqrt_psd(const ComplexMatrix& m, double clamp = 1e-14);

/// Sum of |eigenvalues| of a Hermitian matrix (trace norm).
double trace_norm_hermitian(const ComplexMatrix& m);
/// Sum of negative eigenvalues (the "negative spectral part" trace).
double negative_part_trace(const ComplexMatrix& m);

}  // namespace qrate
