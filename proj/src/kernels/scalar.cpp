#include "singletlab/kernels.hpp"

namespace singletlab::kernels {
namespace {

// Written out by hand: std::complex operator* goes through the C99 Annex G
// NaN recovery path, which is slow and never needed for finite amplitudes.
inline void mul_acc(double& re, double& im, const cplx& a, const cplx& b) {
  re += a.real() * b.real() - a.imag() * b.imag();
  im += a.real() * b.imag() + a.imag() * b.real();
}

void apply_matrix(cplx* amps, std::span<const std::size_t> bases,
                  std::span<const std::size_t> offsets, const cplx* mat, cplx* scratch) {
  const std::size_t k = offsets.size();
  cplx* in = scratch;
  for (const std::size_t base : bases) {
    for (std::size_t c = 0; c < k; ++c) in[c] = amps[base + offsets[c]];
    for (std::size_t r = 0; r < k; ++r) {
      double re = 0.0;
      double im = 0.0;
      const cplx* row = mat + r * k;
      for (std::size_t c = 0; c < k; ++c) mul_acc(re, im, row[c], in[c]);
      amps[base + offsets[r]] = cplx(re, im);
    }
  }
}

double norm_squared(std::span<const cplx> a) {
  double s = 0.0;
  for (const cplx& x : a) s += x.real() * x.real() + x.imag() * x.imag();
  return s;
}

cplx inner_product(std::span<const cplx> a, std::span<const cplx> b) {
  double re = 0.0;
  double im = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) mul_acc(re, im, std::conj(a[i]), b[i]);
  return {re, im};
}

void scale(std::span<cplx> a, cplx s) {
  for (cplx& x : a) {
    x = cplx(x.real() * s.real() - x.imag() * s.imag(), x.real() * s.imag() + x.imag() * s.real());
  }
}

}  // namespace

const KernelTable& scalar_table() {
  static const KernelTable table{"scalar", &apply_matrix, &norm_squared, &inner_product, &scale};
  return table;
}

}  // namespace singletlab::kernels
