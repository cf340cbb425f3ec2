#pragma once

// Inner loops of the simulator. Every kernel has a scalar reference
// implementation; an AVX2/FMA variant is compiled on x86-64 and picked at
// runtime when the CPU supports it. The two must agree to within a few ulps,
// which tests/unit/test_kernels.cpp checks on random inputs.

#include <complex>
#include <cstddef>
#include <span>
#include <string_view>

namespace singletlab::kernels {

using cplx = std::complex<double>;

// For every base index b, gathers amps[b + offsets[0..k)], multiplies the
// gathered vector by the row-major k x k matrix `mat`, and scatters the
// result back. `scratch` must hold at least 2*k elements.
using ApplyMatrixFn = void (*)(cplx* amps, std::span<const std::size_t> bases,
                               std::span<const std::size_t> offsets, const cplx* mat,
                               cplx* scratch);

// sum |a_i|^2
using NormSquaredFn = double (*)(std::span<const cplx> a);

// sum conj(a_i) * b_i
using InnerProductFn = cplx (*)(std::span<const cplx> a, std::span<const cplx> b);

// a_i *= s
using ScaleFn = void (*)(std::span<cplx> a, cplx s);

struct KernelTable {
  std::string_view name;
  ApplyMatrixFn apply_matrix;
  NormSquaredFn norm_squared;
  InnerProductFn inner_product;
  ScaleFn scale;
};

const KernelTable& scalar_table();

// nullptr when the binary was built without AVX2 support or the running CPU
// lacks AVX2/FMA.
const KernelTable* avx2_table();

// Selected once on first use. SINGLETLAB_KERNELS=scalar forces the reference
// path; anything else (or unset) picks the widest supported variant.
const KernelTable& active();

}  // namespace singletlab::kernels
