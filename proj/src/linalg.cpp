#include "singletlab/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "singletlab/errors.hpp"
#include "singletlab/kernels.hpp"
#include "singletlab/rng.hpp"

namespace singletlab {

namespace {
constexpr double kTwoPi = 2.0 * std::numbers::pi;
}

ComplexMatrix::ComplexMatrix(std::size_t rows, std::size_t cols)
    : rows_(rows), cols_(cols), entries_(rows * cols) {
  if (rows == 0 || cols == 0) throw DimensionError("matrix dimensions must be positive");
}

ComplexMatrix::ComplexMatrix(std::size_t rows, std::size_t cols, std::vector<cplx> entries)
    : rows_(rows), cols_(cols), entries_(std::move(entries)) {
  if (rows == 0 || cols == 0) throw DimensionError("matrix dimensions must be positive");
  if (entries_.size() != rows * cols) {
    throw DimensionError("matrix expects " + std::to_string(rows * cols) + " entries, got " +
                         std::to_string(entries_.size()));
  }
  for (const cplx& z : entries_) {
    if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) {
      throw PreconditionError("matrix entry is not finite");
    }
  }
}

ComplexMatrix ComplexMatrix::identity(std::size_t n) {
  ComplexMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
  return m;
}

ComplexMatrix ComplexMatrix::diagonal(std::span<const cplx> diag) {
  ComplexMatrix m(diag.size(), diag.size());
  for (std::size_t i = 0; i < diag.size(); ++i) m(i, i) = diag[i];
  return m;
}

ComplexMatrix ComplexMatrix::from_rows(std::initializer_list<std::initializer_list<cplx>> rows) {
  const std::size_t r = rows.size();
  const std::size_t c = r == 0 ? 0 : rows.begin()->size();
  std::vector<cplx> entries;
  entries.reserve(r * c);
  for (const auto& row : rows) {
    if (row.size() != c) throw DimensionError("ragged matrix rows");
    entries.insert(entries.end(), row.begin(), row.end());
  }
  return ComplexMatrix(r, c, std::move(entries));
}

ComplexMatrix ComplexMatrix::outer(std::span<const cplx> a, std::span<const cplx> b) {
  ComplexMatrix m(a.size(), b.size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    for (std::size_t j = 0; j < b.size(); ++j) m(i, j) = a[i] * std::conj(b[j]);
  }
  return m;
}

ComplexMatrix ComplexMatrix::adjoint() const {
  ComplexMatrix m(cols_, rows_);
  for (std::size_t i = 0; i < rows_; ++i) {
    for (std::size_t j = 0; j < cols_; ++j) m(j, i) = std::conj((*this)(i, j));
  }
  return m;
}

cplx ComplexMatrix::trace() const {
  cplx t = 0.0;
  for (std::size_t i = 0; i < std::min(rows_, cols_); ++i) t += (*this)(i, i);
  return t;
}

CVector ComplexMatrix::column(std::size_t c) const {
  CVector v(rows_);
  for (std::size_t r = 0; r < rows_; ++r) v[r] = (*this)(r, c);
  return v;
}

CVector ComplexMatrix::apply(std::span<const cplx> v) const {
  if (v.size() != cols_) throw DimensionError("matrix-vector size mismatch");
  CVector out(rows_);
  for (std::size_t r = 0; r < rows_; ++r) {
    cplx s = 0.0;
    for (std::size_t c = 0; c < cols_; ++c) s += (*this)(r, c) * v[c];
    out[r] = s;
  }
  return out;
}

double ComplexMatrix::max_abs_diff(const ComplexMatrix& other) const {
  if (rows_ != other.rows_ || cols_ != other.cols_) throw DimensionError("matrix shape mismatch");
  double worst = 0.0;
  for (std::size_t i = 0; i < entries_.size(); ++i) {
    worst = std::max(worst, std::abs(entries_[i] - other.entries_[i]));
  }
  return worst;
}

ComplexMatrix& ComplexMatrix::operator+=(const ComplexMatrix& other) {
  if (rows_ != other.rows_ || cols_ != other.cols_) throw DimensionError("matrix shape mismatch");
  for (std::size_t i = 0; i < entries_.size(); ++i) entries_[i] += other.entries_[i];
  return *this;
}

ComplexMatrix& ComplexMatrix::operator-=(const ComplexMatrix& other) {
  if (rows_ != other.rows_ || cols_ != other.cols_) throw DimensionError("matrix shape mismatch");
  for (std::size_t i = 0; i < entries_.size(); ++i) entries_[i] -= other.entries_[i];
  return *this;
}

ComplexMatrix& ComplexMatrix::operator*=(cplx s) {
  for (cplx& z : entries_) z *= s;
  return *this;
}

ComplexMatrix operator*(const ComplexMatrix& a, const ComplexMatrix& b) {
  if (a.cols_ != b.rows_) throw DimensionError("matrix product shape mismatch");
  ComplexMatrix m(a.rows_, b.cols_);
  for (std::size_t i = 0; i < a.rows_; ++i) {
    for (std::size_t k = 0; k < a.cols_; ++k) {
      const cplx aik = a(i, k);
      if (aik == cplx(0.0)) continue;
      for (std::size_t j = 0; j < b.cols_; ++j) m(i, j) += aik * b(k, j);
    }
  }
  return m;
}

ComplexMatrix tensor_product(const ComplexMatrix& a, const ComplexMatrix& b) {
  ComplexMatrix m(a.rows() * b.rows(), a.cols() * b.cols());
  for (std::size_t ar = 0; ar < a.rows(); ++ar) {
    for (std::size_t ac = 0; ac < a.cols(); ++ac) {
      const cplx s = a(ar, ac);
      for (std::size_t br = 0; br < b.rows(); ++br) {
        for (std::size_t bc = 0; bc < b.cols(); ++bc) {
          m(ar * b.rows() + br, ac * b.cols() + bc) = s * b(br, bc);
        }
      }
    }
  }
  return m;
}

bool is_unitary(const ComplexMatrix& m, double tol) {
  if (!m.is_square()) throw DimensionError("unitarity check needs a square matrix");
  return (m.adjoint() * m).max_abs_diff(ComplexMatrix::identity(m.rows())) <= tol;
}

cplx determinant(const ComplexMatrix& m) {
  if (!m.is_square()) throw DimensionError("determinant needs a square matrix");
  const std::size_t n = m.rows();
  ComplexMatrix a = m;
  cplx det = 1.0;
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t pivot = col;
    for (std::size_t r = col + 1; r < n; ++r) {
      if (std::abs(a(r, col)) > std::abs(a(pivot, col))) pivot = r;
    }
    if (a(pivot, col) == cplx(0.0)) return 0.0;
    if (pivot != col) {
      for (std::size_t c = 0; c < n; ++c) std::swap(a(pivot, c), a(col, c));
      det = -det;
    }
    det *= a(col, col);
    for (std::size_t r = col + 1; r < n; ++r) {
      const cplx f = a(r, col) / a(col, col);
      for (std::size_t c = col; c < n; ++c) a(r, c) -= f * a(col, c);
    }
  }
  return det;
}

ComplexMatrix matrix_power(const ComplexMatrix& m, std::uint64_t power) {
  if (!m.is_square()) throw DimensionError("matrix power needs a square matrix");
  ComplexMatrix result = ComplexMatrix::identity(m.rows());
  ComplexMatrix base = m;
  while (power > 0) {
    if (power & 1U) result = result * base;
    power >>= 1U;
    if (power > 0) base = base * base;
  }
  return result;
}

UnitaryMatrix::UnitaryMatrix(ComplexMatrix m) : m_(std::move(m)) {
  if (!m_.is_square()) throw DimensionError("unitary must be square");
  if (!is_unitary(m_, kUnitarityTol)) throw PreconditionError("matrix is not unitary within 1e-10");
}

UnitaryMatrix UnitaryMatrix::adjoint() const { return UnitaryMatrix(m_.adjoint(), Trusted{}); }

UnitaryMatrix UnitaryMatrix::power(std::uint64_t p) const {
  return UnitaryMatrix(matrix_power(m_, p), Trusted{});
}

UnitaryMatrix UnitaryMatrix::fourier(std::size_t dim, int sign) {
  if (dim == 0) throw DimensionError("dimension must be at least 1");
  if (sign != 1 && sign != -1) throw PreconditionError("Fourier sign must be +1 or -1");
  ComplexMatrix f(dim, dim);
  const double scale = 1.0 / std::sqrt(static_cast<double>(dim));
  for (std::size_t z = 0; z < dim; ++z) {
    for (std::size_t y = 0; y < dim; ++y) {
      // Reduce y*z mod dim first so the angle stays small and exact.
      const std::size_t k = (y * z) % dim;
      const double angle = sign * kTwoPi * static_cast<double>(k) / static_cast<double>(dim);
      f(z, y) = std::polar(scale, angle);
    }
  }
  return UnitaryMatrix(std::move(f), Trusted{});
}

EigenSystem::EigenSystem(std::vector<CVector> vectors, std::vector<double> phases, bool degenerate)
    : vectors_(std::move(vectors)), phases_(std::move(phases)), degenerate_(degenerate) {
  const std::size_t n = vectors_.size();
  if (n == 0) throw PreconditionError("eigensystem needs at least one eigenvector");
  if (phases_.size() != n) throw PreconditionError("eigenvector and eigenphase counts differ");
  for (const CVector& v : vectors_) {
    if (v.size() != n) throw PreconditionError("eigenvector length differs from dimension");
  }
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i; j < n; ++j) {
      const double mag = std::abs(inner(vectors_[i], vectors_[j]));
      const double expected = i == j ? 1.0 : 0.0;
      if (std::abs(mag - expected) > 1e-10) {
        throw PreconditionError("eigenvectors are not orthonormal within 1e-10");
      }
    }
  }
  for (double& p : phases_) p = wrap_phase(p);
}

ComplexMatrix EigenSystem::basis_matrix() const {
  const std::size_t n = dim();
  ComplexMatrix m(n, n);
  for (std::size_t c = 0; c < n; ++c) {
    for (std::size_t r = 0; r < n; ++r) m(r, c) = vectors_[c][r];
  }
  return m;
}

UnitaryMatrix unitary_from_eigensystem(const EigenSystem& es) {
  const std::size_t n = es.dim();
  ComplexMatrix u(n, n);
  for (std::size_t k = 0; k < n; ++k) {
    u += std::polar(1.0, es.phase(k)) * ComplexMatrix::outer(es.vector(k), es.vector(k));
  }
  return UnitaryMatrix(std::move(u));
}

UnitaryMatrix haar_random_unitary(std::size_t dim, std::uint64_t seed) {
  if (dim == 0) throw DimensionError("dimension must be at least 1");
  Rng rng(seed);
  std::vector<CVector> cols(dim, CVector(dim));
  for (auto& col : cols) {
    for (cplx& z : col) {
      const double re = rng.normal();
      const double im = rng.normal();
      z = cplx(re, im) / std::sqrt(2.0);
    }
  }
  // Modified Gram-Schmidt, two passes. Dividing by the positive column norm
  // fixes the phase of R's diagonal, which is what makes Q Haar distributed.
  for (std::size_t j = 0; j < dim; ++j) {
    for (int pass = 0; pass < 2; ++pass) {
      for (std::size_t i = 0; i < j; ++i) {
        const cplx proj = inner(cols[i], cols[j]);
        for (std::size_t r = 0; r < dim; ++r) cols[j][r] -= proj * cols[i][r];
      }
    }
    cols[j] = normalized(cols[j]);
  }
  ComplexMatrix q(dim, dim);
  for (std::size_t c = 0; c < dim; ++c) {
    for (std::size_t r = 0; r < dim; ++r) q(r, c) = cols[c][r];
  }
  return UnitaryMatrix(std::move(q));
}

EigenSystem eigendecompose_2x2_unitary(const UnitaryMatrix& u) {
  if (u.dim() != 2) throw DimensionError("closed-form eigendecomposition needs a 2x2 unitary");
  const cplx a = u(0, 0);
  const cplx b = u(0, 1);
  const cplx c = u(1, 0);
  const cplx d = u(1, 1);
  const cplx half_trace = 0.5 * (a + d);
  // M = U - (tr/2) I is traceless and normal, with eigenvalues +mu and -mu.
  // |mu| = ||M||_F / sqrt(2) is accurate even when mu^2 = h^2 + bc is not.
  const cplx h = 0.5 * (a - d);
  const double frob = std::sqrt(2.0 * std::norm(h) + std::norm(b) + std::norm(c));
  const double mu_abs = frob / std::sqrt(2.0);
  if (2.0 * mu_abs <= 1e-12) {
    const double shared = wrap_phase(std::arg(half_trace));
    return EigenSystem({CVector{1.0, 0.0}, CVector{0.0, 1.0}}, {shared, shared}, true);
  }
  cplx mu = std::sqrt(h * h + b * c);
  mu = std::abs(mu) > 0.0 ? mu * (mu_abs / std::abs(mu)) : cplx(mu_abs);
  // Columns of M + mu I span the +mu eigenspace; take the larger one.
  const CVector col0{h + mu, c};
  const CVector col1{b, -h + mu};
  CVector v1 = normalized(norm(col0) >= norm(col1) ? col0 : col1);
  CVector v2{-std::conj(v1[1]), std::conj(v1[0])};
  const ComplexMatrix& m = u.matrix();
  double p1 = wrap_phase(std::arg(inner(v1, m.apply(v1))));
  double p2 = wrap_phase(std::arg(inner(v2, m.apply(v2))));
  if (p2 < p1) {
    std::swap(v1, v2);
    std::swap(p1, p2);
  }
  return EigenSystem({std::move(v1), std::move(v2)}, {p1, p2}, false);
}

double wrap_phase(double phi) {
  double w = std::fmod(phi, kTwoPi);
  if (w < 0.0) w += kTwoPi;
  if (w >= kTwoPi) w = 0.0;
  return w;
}

double phase_distance(double a, double b) {
  const double d = wrap_phase(a - b);
  return std::min(d, kTwoPi - d);
}

cplx inner(std::span<const cplx> a, std::span<const cplx> b) {
  if (a.size() != b.size()) throw DimensionError("inner product size mismatch");
  return kernels::active().inner_product(a, b);
}

double norm(std::span<const cplx> a) { return std::sqrt(kernels::active().norm_squared(a)); }

CVector normalized(std::span<const cplx> a) {
  const double n = norm(a);
  if (n == 0.0) throw PreconditionError("cannot normalize the zero vector");
  CVector out(a.begin(), a.end());
  for (cplx& z : out) z /= n;
  return out;
}

}  // namespace singletlab
