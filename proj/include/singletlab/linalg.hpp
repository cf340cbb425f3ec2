#pragma once

// Dense complex linear algebra for small operators: gates, eigenbases,
// tensor products. Matrices here are at most a few hundred rows; the state
// vector kernels live in kernels.hpp.

#include <complex>
#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <span>
#include <vector>

namespace singletlab {

using cplx = std::complex<double>;
using CVector = std::vector<cplx>;

inline constexpr double kUnitarityTol = 1e-10;

class ComplexMatrix {
 public:
  // Zero matrix.
  ComplexMatrix(std::size_t rows, std::size_t cols);
  // Row-major entries; throws DimensionError on a size mismatch and
  // PreconditionError on non-finite entries.
  ComplexMatrix(std::size_t rows, std::size_t cols, std::vector<cplx> entries);

  static ComplexMatrix identity(std::size_t n);
  static ComplexMatrix diagonal(std::span<const cplx> diag);
  static ComplexMatrix from_rows(std::initializer_list<std::initializer_list<cplx>> rows);
  // |a><b|
  static ComplexMatrix outer(std::span<const cplx> a, std::span<const cplx> b);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool is_square() const { return rows_ == cols_; }

  cplx& operator()(std::size_t r, std::size_t c) { return entries_[r * cols_ + c]; }
  const cplx& operator()(std::size_t r, std::size_t c) const { return entries_[r * cols_ + c]; }
  std::span<const cplx> entries() const { return entries_; }
  const cplx* data() const { return entries_.data(); }

  ComplexMatrix adjoint() const;
  cplx trace() const;
  CVector column(std::size_t c) const;
  CVector apply(std::span<const cplx> v) const;

  // Largest |this_ij - other_ij|; DimensionError on shape mismatch.
  double max_abs_diff(const ComplexMatrix& other) const;

  ComplexMatrix& operator+=(const ComplexMatrix& other);
  ComplexMatrix& operator-=(const ComplexMatrix& other);
  ComplexMatrix& operator*=(cplx s);

  friend ComplexMatrix operator*(const ComplexMatrix& a, const ComplexMatrix& b);
  friend ComplexMatrix operator+(ComplexMatrix a, const ComplexMatrix& b) { return a += b; }
  friend ComplexMatrix operator-(ComplexMatrix a, const ComplexMatrix& b) { return a -= b; }
  friend ComplexMatrix operator*(cplx s, ComplexMatrix a) { return a *= s; }

 private:
  std::size_t rows_;
  std::size_t cols_;
  std::vector<cplx> entries_;
};

// Kronecker product; the first factor's index is the most significant digit
// of the combined row/column index.
ComplexMatrix tensor_product(const ComplexMatrix& a, const ComplexMatrix& b);

// max_ij |(M^dagger M - I)_ij| <= tol. DimensionError for non-square input.
bool is_unitary(const ComplexMatrix& m, double tol = kUnitarityTol);

// LU with partial pivoting.
cplx determinant(const ComplexMatrix& m);

// Repeated squaring; power 0 gives the identity.
ComplexMatrix matrix_power(const ComplexMatrix& m, std::uint64_t power);

class UnitaryMatrix {
 public:
  // PreconditionError unless is_unitary(m, kUnitarityTol).
  explicit UnitaryMatrix(ComplexMatrix m);

  std::size_t dim() const { return m_.rows(); }
  const ComplexMatrix& matrix() const { return m_; }
  const cplx& operator()(std::size_t r, std::size_t c) const { return m_(r, c); }

  UnitaryMatrix adjoint() const;
  UnitaryMatrix power(std::uint64_t p) const;

  // F[z][y] = exp(sign * 2*pi*i*y*z / dim) / sqrt(dim). Unitary by
  // construction, so the O(dim^3) check is skipped.
  static UnitaryMatrix fourier(std::size_t dim, int sign);

 private:
  struct Trusted {};
  UnitaryMatrix(ComplexMatrix m, Trusted) : m_(std::move(m)) {}
  ComplexMatrix m_;
};

// Orthonormal eigenvectors paired with eigenphases in [0, 2*pi).
class EigenSystem {
 public:
  // PreconditionError when the vectors are not orthonormal within 1e-10, the
  // counts disagree, or any vector length differs from the vector count.
  EigenSystem(std::vector<CVector> vectors, std::vector<double> phases, bool degenerate = false);

  std::size_t dim() const { return vectors_.size(); }
  const std::vector<CVector>& vectors() const { return vectors_; }
  const CVector& vector(std::size_t k) const { return vectors_[k]; }
  const std::vector<double>& phases() const { return phases_; }
  double phase(std::size_t k) const { return phases_[k]; }
  bool degenerate() const { return degenerate_; }

  // Columns are the eigenvectors.
  ComplexMatrix basis_matrix() const;

 private:
  std::vector<CVector> vectors_;
  std::vector<double> phases_;
  bool degenerate_;
};

// U = sum_k e^{i phi_k} |v_k><v_k|
UnitaryMatrix unitary_from_eigensystem(const EigenSystem& es);

// Gaussian matrix orthonormalized column by column; identical (dim, seed)
// give bit-identical results.
UnitaryMatrix haar_random_unitary(std::size_t dim, std::uint64_t seed);

// Closed-form eigensystem of a 2x2 unitary, phases sorted ascending. A
// scalar matrix (eigenphase gap <= 1e-12) returns the computational basis
// flagged degenerate.
EigenSystem eigendecompose_2x2_unitary(const UnitaryMatrix& u);

// Maps any angle into [0, 2*pi).
double wrap_phase(double phi);
// Distance on the circle, in [0, pi].
double phase_distance(double a, double b);

cplx inner(std::span<const cplx> a, std::span<const cplx> b);
double norm(std::span<const cplx> a);
CVector normalized(std::span<const cplx> a);

}  // namespace singletlab
