#include "qrate/complex_matrix.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "qrate/errors.hpp"

namespace qrate {

ComplexMatrix ComplexMatrix::identity(std::size_t n) {
  ComplexMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
  return m;
}

ComplexMatrix& ComplexMatrix::operator+=(const ComplexMatrix& o) {
  if (rows_ != o.rows_ || cols_ != o.cols_)
    throw DimensionMismatch("matrix addition shape");
  for (std::size_t i = 0; i < data_.size(); ++i) data_[i] += o.data_[i];
  return *this;
}

ComplexMatrix& ComplexMatrix::operator-=(const ComplexMatrix& o) {
  if (rows_ != o.rows_ || cols_ != o.cols_)
    throw DimensionMismatch("matrix subtraction shape");
  for (std::size_t i = 0; i < data_.size(); ++i) data_[i] -= o.data_[i];
  return *this;
}

ComplexMatrix& ComplexMatrix::operator*=(cplx s) {
  for (auto& x : data_) x *= s;
  return *this;
}

ComplexMatrix ComplexMatrix::adjoint() const {
  ComplexMatrix r(cols_, rows_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) r(j, i) = std::conj((*this)(i, j));
  return r;
}

ComplexMatrix ComplexMatrix::transpose() const {
  ComplexMatrix r(cols_, rows_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) r(j, i) = (*this)(i, j);
  return r;
}

ComplexMatrix ComplexMatrix::conjugate() const {
  ComplexMatrix r(rows_, cols_);
  for (std::size_t i = 0; i < data_.size(); ++i) r.data_[i] = std::conj(data_[i]);
  return r;
}

cplx ComplexMatrix::trace() const {
  cplx t = 0.0;
  for (std::size_t i = 0; i < std::min(rows_, cols_); ++i) t += (*this)(i, i);
  return t;
}

double ComplexMatrix::max_abs() const {
  double m = 0.0;
  for (const auto& x : data_) m = std::max(m, std::abs(x));
  return m;
}

double ComplexMatrix::frobenius_norm() const {
  double s = 0.0;
  for (const auto& x : data_) s += std::norm(x);
  return std::sqrt(s);
}

bool ComplexMatrix::is_hermitian(double tol) const {
  if (rows_ != cols_) return false;
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = i; j < cols_; ++j)
      if (std::abs((*this)(i, j) - std::conj((*this)(j, i))) > tol) return false;
  return true;
}

bool ComplexMatrix::all_finite() const {
  for (const auto& x : data_)
    if (!std::isfinite(x.real()) || !std::isfinite(x.imag())) return false;
  return true;
}

ComplexMatrix operator+(const ComplexMatrix& a, const ComplexMatrix& b) {
  ComplexMatrix r = a;
  r += b;
  return r;
}

ComplexMatrix operator-(const ComplexMatrix& a, const ComplexMatrix& b) {
  ComplexMatrix r = a;
  r -= b;
  return r;
}

ComplexMatrix operator*(const ComplexMatrix& a, const ComplexMatrix& b) {
  if (a.cols() != b.rows()) throw DimensionMismatch("matrix product shape");
  ComplexMatrix r(a.rows(), b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t k = 0; k < a.cols(); ++k) {
      const cplx aik = a(i, k);
      if (aik == cplx(0.0, 0.0)) continue;
      for (std::size_t j = 0; j < b.cols(); ++j) r(i, j) += aik * b(k, j);
    }
  return r;
}

ComplexMatrix operator*(cplx s, const ComplexMatrix& a) {
  ComplexMatrix r = a;
  r *= s;
  return r;
}

std::vector<cplx> operator*(const ComplexMatrix& a, const std::vector<cplx>& v) {
  if (a.cols() != v.size()) throw DimensionMismatch("matrix-vector shape");
  std::vector<cplx> r(a.rows(), cplx(0.0, 0.0));
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) r[i] += a(i, j) * v[j];
  return r;
}

ComplexMatrix tensor(const ComplexMatrix& a, const ComplexMatrix& b) {
  ComplexMatrix r(a.rows() * b.rows(), a.cols() * b.cols());
  for (std::size_t ia = 0; ia < a.rows(); ++ia)
    for (std::size_t ja = 0; ja < a.cols(); ++ja) {
      const cplx v = a(ia, ja);
      if (v == cplx(0.0, 0.0)) continue;
      for (std::size_t ib = 0; ib < b.rows(); ++ib)
        for (std::size_t jb = 0; jb < b.cols(); ++jb)
          r(ia * b.rows() + ib, ja * b.cols() + jb) = v * b(ib, jb);
    }
  return r;
}

std::vector<cplx> tensor(const std::vector<cplx>& u, const std::vector<cplx>& v) {
  std::vector<cplx> r(u.size() * v.size());
  for (std::size_t i = 0; i < u.size(); ++i)
    for (std::size_t j = 0; j < v.size(); ++j) r[i * v.size() + j] = u[i] * v[j];
  return r;
}

ComplexMatrix outer(const std::vector<cplx>& u, const std::vector<cplx>& v) {
  ComplexMatrix r(u.size(), v.size());
  for (std::size_t i = 0; i < u.size(); ++i)
    for (std::size_t j = 0; j < v.size(); ++j) r(i, j) = u[i] * std::conj(v[j]);
  return r;
}

namespace {

std::size_t prod(const std::vector<std::size_t>& d) {
  return std::accumulate(d.begin(), d.end(), std::size_t{1},
                         std::multiplies<std::size_t>());
}

void decode(std::size_t index, const std::vector<std::size_t>& dims,
            std::vector<std::size_t>& digits) {
  for (std::size_t k = dims.size(); k-- > 0;) {
    digits[k] = index % dims[k];
    index /= dims[k];
  }
}

}  // namespace

ComplexMatrix partial_trace(const ComplexMatrix& m,
                            const std::vector<std::size_t>& dims,
                            const std::vector<std::size_t>& keep) {
  const std::size_t total = prod(dims);
  if (m.rows() != total || m.cols() != total)
    throw DimensionMismatch("partial_trace: dims product != matrix dimension");
  std::vector<bool> kept(dims.size(), false);
  for (std::size_t k : keep) {
    if (k >= dims.size()) throw IndexOutOfRange("partial_trace keep index");
    kept[k] = true;
  }
  std::size_t out_dim = 1;
  for (std::size_t k = 0; k < dims.size(); ++k)
    if (kept[k]) out_dim *= dims[k];

  ComplexMatrix r(out_dim, out_dim);
  std::vector<std::size_t> rd(dims.size()), cd(dims.size());
  for (std::size_t row = 0; row < total; ++row) {
    decode(row, dims, rd);
    for (std::size_t col = 0; col < total; ++col) {
      decode(col, dims, cd);
      bool diag = true;
      for (std::size_t k = 0; k < dims.size(); ++k)
        if (!kept[k] && rd[k] != cd[k]) {
          diag = false;
          break;
        }
      if (!diag) continue;
      std::size_t orow = 0, ocol = 0;
      for (std::size_t k = 0; k < dims.size(); ++k)
        if (kept[k]) {
          orow = orow * dims[k] + rd[k];
          ocol = ocol * dims[k] + cd[k];
        }
      r(orow, ocol) += m(row, col);
    }
  }
  return r;
}

ComplexMatrix permute_systems(const ComplexMatrix& m,
                              const std::vector<std::size_t>& dims,
                              const std::vector<std::size_t>& perm) {
  const std::size_t total = prod(dims);
  if (m.rows() != total || m.cols() != total)
    throw DimensionMismatch("permute_systems: dims product != matrix dimension");
  if (perm.size() != dims.size())
    throw DimensionMismatch("permute_systems: permutation length");

  std::vector<std::size_t> new_dims(dims.size());
  for (std::size_t s = 0; s < perm.size(); ++s) new_dims[s] = dims[perm[s]];

  // map[i] = new index of old basis state i
  std::vector<std::size_t> map(total);
  std::vector<std::size_t> digits(dims.size());
  for (std::size_t i = 0; i < total; ++i) {
    decode(i, dims, digits);
    std::size_t ni = 0;
    for (std::size_t s = 0; s < perm.size(); ++s)
      ni = ni * new_dims[s] + digits[perm[s]];
    map[i] = ni;
  }

  ComplexMatrix r(total, total);
  for (std::size_t i = 0; i < total; ++i)
    for (std::size_t j = 0; j < total; ++j) r(map[i], map[j]) = m(i, j);
  return r;
}

std::vector<cplx> EigResult::column(std::size_t k) const {
  std::vector<cplx> v(vectors.rows());
  for (std::size_t i = 0; i < vectors.rows(); ++i) v[i] = vectors(i, k);
  return v;
}

EigResult eig_hermitian(const ComplexMatrix& m) {
  if (m.rows() != m.cols()) throw NonHermitianInput("matrix not square");
  if (!m.is_hermitian(1e-8))
    throw NonHermitianInput("max |m - m^dagger| exceeds 1e-8");

  const std::size_t n = m.rows();
  // Symmetrize so the iteration works on an exactly Hermitian matrix.
  ComplexMatrix a(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      a(i, j) = 0.5 * (m(i, j) + std::conj(m(j, i)));
  ComplexMatrix v = ComplexMatrix::identity(n);

  const double scale = std::max(1.0, a.max_abs());
  const double stop = 1e-15 * scale;

  for (int sweep = 0; sweep < 200; ++sweep) {
    double off = 0.0;
    for (std::size_t p = 0; p < n; ++p)
      for (std::size_t q = p + 1; q < n; ++q) off = std::max(off, std::abs(a(p, q)));
    if (off < stop) break;

    for (std::size_t p = 0; p < n; ++p) {
      for (std::size_t q = p + 1; q < n; ++q) {
        const cplx b = a(p, q);
        const double ab = std::abs(b);
        if (ab < stop * 1e-2) continue;
        const double app = a(p, p).real();
        const double aqq = a(q, q).real();
        const cplx phase = b / ab;  // e^{i beta}

        // Rotation angle for the phased-out real 2x2 block.
        const double tau = (aqq - app) / (2.0 * ab);
        const double t =
            (tau >= 0 ? 1.0 : -1.0) / (std::abs(tau) + std::sqrt(tau * tau + 1.0));
        const double c = 1.0 / std::sqrt(t * t + 1.0);
        const double s = t * c;

        // U restricted to (p,q): [[c, s], [-s*conj(phase), c*conj(phase)]]
        const cplx upp = c, upq = s;
        const cplx uqp = -s * std::conj(phase), uqq = c * std::conj(phase);

        // A <- U^dagger A U, columns then rows.
        for (std::size_t k = 0; k < n; ++k) {
          const cplx akp = a(k, p), akq = a(k, q);
          a(k, p) = akp * upp + akq * uqp;
          a(k, q) = akp * upq + akq * uqq;
        }
        for (std::size_t k = 0; k < n; ++k) {
          const cplx apk = a(p, k), aqk = a(q, k);
          a(p, k) = std::conj(upp) * apk + std::conj(uqp) * aqk;
          a(q, k) = std::conj(upq) * apk + std::conj(uqq) * aqk;
        }
        a(p, q) = std::conj(a(q, p));  // keep exactly Hermitian
        a(p, p) = cplx(a(p, p).real(), 0.0);
        a(q, q) = cplx(a(q, q).real(), 0.0);

        for (std::size_t k = 0; k < n; ++k) {
          const cplx vkp = v(k, p), vkq = v(k, q);
          v(k, p) = vkp * upp + vkq * uqp;
          v(k, q) = vkp * upq + vkq * uqq;
        }
      }
    }
  }

  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::sort(order.begin(), order.end(), [&](std::size_t i, std::size_t j) {
    return a(i, i).real() > a(j, j).real();
  });

  EigResult res;
  res.values.resize(n);
  res.vectors = ComplexMatrix(n, n);
  for (std::size_t k = 0; k < n; ++k) {
    res.values[k] = a(order[k], order[k]).real();
    for (std::size_t i = 0; i < n; ++i) res.vectors(i, k) = v(i, order[k]);
  }
  return res;
}

ComplexMatrix hermitian_function(const ComplexMatrix& m,
                                 const std::function<double(double)>& f) {
  EigResult e = eig_hermitian(m);
  const std::size_t n = m.rows();
  ComplexMatrix r(n, n);
  for (std::size_t k = 0; k < n; ++k) {
    const double fk = f(e.values[k]);
    if (fk == 0.0) continue;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j)
        r(i, j) += fk * e.vectors(i, k) * std::conj(e.vectors(j, k));
  }
  return r;
}

ComplexMatrix matrix_exp_hermitian(const ComplexMatrix& m) {
  return hermitian_function(m, [](double x) { return std::exp(x); });
}

ComplexMatrix matrix_log2_clamped(const ComplexMatrix& m, double clamp) {
  return hermitian_function(
      m, [clamp](double x) { return std::log2(std::max(x, clamp)); });
}

ComplexMatrix matrix_sqrt_psd(const ComplexMatrix& m) {
  return hermitian_function(m, [](double x) { return std::sqrt(std::max(x, 0.0)); });
}

ComplexMatrix matrix_inv_sqrt_psd(const ComplexMatrix& m, double clamp) {
  return hermitian_function(m, [clamp](double x) {
    return 1.0 / std::sqrt(std::max(x, clamp));
  });
}

double trace_norm_hermitian(const ComplexMatrix& m) {
  EigResult e = eig_hermitian(m);
  double s = 0.0;
  for (double x : e.values) s += std::abs(x);
  return s;
}

double negative_part_trace(const ComplexMatrix& m) {
  EigResult e = eig_hermitian(m);
  double s = 0.0;
  for (double x : e.values)
    if (x < 0.0) s += x;
  return s;
}

}  // namespace qrate
