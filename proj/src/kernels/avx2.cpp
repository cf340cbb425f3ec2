#include "singletlab/kernels.hpp"

#if defined(__x86_64__) && (defined(__GNUC__) || defined(__clang__))
#define SINGLETLAB_HAVE_AVX2 1
#include <immintrin.h>
#else
#define SINGLETLAB_HAVE_AVX2 0
#endif

namespace singletlab::kernels {

#if SINGLETLAB_HAVE_AVX2
namespace {

#define SL_AVX2 __attribute__((target("avx2,fma")))

// Lane layout of __m256d throughout: [re0, im0, re1, im1].

SL_AVX2 inline __m256d load2(const cplx* p) {
  return _mm256_loadu_pd(reinterpret_cast<const double*>(p));
}

SL_AVX2 inline void store2(cplx* p, __m256d v) {
  _mm256_storeu_pd(reinterpret_cast<double*>(p), v);
}

SL_AVX2 inline cplx hsum(__m256d v) {
  const __m128d s = _mm_add_pd(_mm256_castpd256_pd128(v), _mm256_extractf128_pd(v, 1));
  alignas(16) double out[2];
  _mm_store_pd(out, s);
  return {out[0], out[1]};
}

// sum row[c] * in[c], accumulating the real-broadcast and imaginary-broadcast
// products separately and folding them with one addsub at the end.
SL_AVX2 inline cplx dot_plain(const cplx* row, const cplx* in, std::size_t k) {
  __m256d acc_re = _mm256_setzero_pd();
  __m256d acc_im = _mm256_setzero_pd();
  std::size_t c = 0;
  for (; c + 2 <= k; c += 2) {
    const __m256d a = load2(row + c);
    const __m256d b = load2(in + c);
    acc_re = _mm256_fmadd_pd(_mm256_movedup_pd(a), b, acc_re);
    acc_im = _mm256_fmadd_pd(_mm256_permute_pd(a, 0xF), _mm256_permute_pd(b, 0x5), acc_im);
  }
  cplx r = hsum(_mm256_addsub_pd(acc_re, acc_im));
  for (; c < k; ++c) {
    const cplx& a = row[c];
    const cplx& b = in[c];
    r = cplx(r.real() + a.real() * b.real() - a.imag() * b.imag(),
             r.imag() + a.real() * b.imag() + a.imag() * b.real());
  }
  return r;
}

SL_AVX2 void apply_matrix(cplx* amps, std::span<const std::size_t> bases,
                          std::span<const std::size_t> offsets, const cplx* mat, cplx* scratch) {
  const std::size_t k = offsets.size();
  const std::size_t* off = offsets.data();
  cplx* in = scratch;
  if (k == 2) {
    const __m256d row0 = load2(mat);
    const __m256d row1 = load2(mat + 2);
    const __m256d r0_re = _mm256_movedup_pd(row0);
    const __m256d r0_im = _mm256_permute_pd(row0, 0xF);
    const __m256d r1_re = _mm256_movedup_pd(row1);
    const __m256d r1_im = _mm256_permute_pd(row1, 0xF);
    for (const std::size_t base : bases) {
      cplx* p0 = amps + base + off[0];
      cplx* p1 = amps + base + off[1];
      const __m256d v = _mm256_set_m128d(_mm_loadu_pd(reinterpret_cast<const double*>(p1)),
                                         _mm_loadu_pd(reinterpret_cast<const double*>(p0)));
      const __m256d vs = _mm256_permute_pd(v, 0x5);
      const cplx y0 = hsum(_mm256_addsub_pd(_mm256_mul_pd(r0_re, v), _mm256_mul_pd(r0_im, vs)));
      const cplx y1 = hsum(_mm256_addsub_pd(_mm256_mul_pd(r1_re, v), _mm256_mul_pd(r1_im, vs)));
      *p0 = y0;
      *p1 = y1;
    }
    return;
  }
  for (const std::size_t base : bases) {
    for (std::size_t c = 0; c < k; ++c) in[c] = amps[base + off[c]];
    for (std::size_t r = 0; r < k; ++r) amps[base + off[r]] = dot_plain(mat + r * k, in, k);
  }
}

SL_AVX2 double norm_squared(std::span<const cplx> a) {
  const double* p = reinterpret_cast<const double*>(a.data());
  const std::size_t n = a.size() * 2;
  __m256d acc0 = _mm256_setzero_pd();
  __m256d acc1 = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 8 <= n; i += 8) {
    const __m256d x0 = _mm256_loadu_pd(p + i);
    const __m256d x1 = _mm256_loadu_pd(p + i + 4);
    acc0 = _mm256_fmadd_pd(x0, x0, acc0);
    acc1 = _mm256_fmadd_pd(x1, x1, acc1);
  }
  for (; i + 4 <= n; i += 4) {
    const __m256d x0 = _mm256_loadu_pd(p + i);
    acc0 = _mm256_fmadd_pd(x0, x0, acc0);
  }
  const cplx h = hsum(_mm256_add_pd(acc0, acc1));
  double s = h.real() + h.imag();
  for (; i < n; ++i) s += p[i] * p[i];
  return s;
}

SL_AVX2 cplx inner_product(std::span<const cplx> a, std::span<const cplx> b) {
  const std::size_t k = a.size();
  __m256d acc_re = _mm256_setzero_pd();
  __m256d acc_im = _mm256_setzero_pd();
  std::size_t c = 0;
  for (; c + 2 <= k; c += 2) {
    const __m256d x = load2(a.data() + c);
    const __m256d y = load2(b.data() + c);
    acc_re = _mm256_fmadd_pd(_mm256_movedup_pd(x), y, acc_re);
    acc_im = _mm256_fmadd_pd(_mm256_permute_pd(x, 0xF), _mm256_permute_pd(y, 0x5), acc_im);
  }
  // conj(x) * y: even lanes add, odd lanes subtract.
  const __m256d neg = _mm256_sub_pd(_mm256_setzero_pd(), acc_im);
  cplx r = hsum(_mm256_addsub_pd(acc_re, neg));
  for (; c < k; ++c) {
    const cplx& x = a[c];
    const cplx& y = b[c];
    r = cplx(r.real() + x.real() * y.real() + x.imag() * y.imag(),
             r.imag() + x.real() * y.imag() - x.imag() * y.real());
  }
  return r;
}

SL_AVX2 void scale(std::span<cplx> a, cplx s) {
  const __m256d s_re = _mm256_set1_pd(s.real());
  const __m256d s_im = _mm256_set1_pd(s.imag());
  const std::size_t k = a.size();
  std::size_t c = 0;
  for (; c + 2 <= k; c += 2) {
    const __m256d x = load2(a.data() + c);
    store2(a.data() + c,
           _mm256_fmaddsub_pd(x, s_re, _mm256_mul_pd(_mm256_permute_pd(x, 0x5), s_im)));
  }
  for (; c < k; ++c) {
    const cplx x = a[c];
    a[c] = cplx(x.real() * s.real() - x.imag() * s.imag(), x.real() * s.imag() + x.imag() * s.real());
  }
}

#undef SL_AVX2

}  // namespace

const KernelTable* avx2_table() {
  static const bool supported = [] {
    __builtin_cpu_init();
    return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
  }();
  static const KernelTable table{"avx2", &apply_matrix, &norm_squared, &inner_product, &scale};
  return supported ? &table : nullptr;
}

#else

const KernelTable* avx2_table() { return nullptr; }

#endif

}  // namespace singletlab::kernels
