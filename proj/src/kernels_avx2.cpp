// AVX2 + FMA variants.  Built with -mavx2 -mfma; callers must check
// kern::active() first (kernels.cpp does).

#include <immintrin.h>

#include "cuspsum/kernels.hpp"

namespace cuspsum::kern {

void axpy_avx2(double* dst, const double* src, std::size_t n, double c) {
    const __m256d vc = _mm256_set1_pd(c);
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        __m256d s = _mm256_loadu_pd(src + i);
        __m256d d = _mm256_loadu_pd(dst + i);
        _mm256_storeu_pd(dst + i, _mm256_fmadd_pd(vc, s, d));
    }
    for (; i < n; ++i) dst[i] = __builtin_fma(c, src[i], dst[i]);
}

namespace {

// Branchless Neumaier update for 4 lanes: s' = s + x, and the lane
// compensation picks (s - s') + x or (x - s') + s depending on which
// addend dominates.
inline void lane_add(__m256d& s, __m256d& comp, __m256d x) {
    const __m256d absmask = _mm256_castsi256_pd(_mm256_set1_epi64x(0x7fffffffffffffffLL));
    __m256d t = _mm256_add_pd(s, x);
    __m256d big_s = _mm256_add_pd(_mm256_sub_pd(s, t), x);
    __m256d big_x = _mm256_add_pd(_mm256_sub_pd(x, t), s);
    __m256d mask =
        _mm256_cmp_pd(_mm256_and_pd(s, absmask), _mm256_and_pd(x, absmask), _CMP_GE_OQ);
    comp = _mm256_add_pd(comp, _mm256_blendv_pd(big_x, big_s, mask));
    s = t;
}

// Reduce one chunk; lanes are folded in index order, then the scalar tail.
template <class LoadF, class TailF>
double chunk_reduce_avx2(std::size_t len, LoadF loadf, TailF tailf) {
    __m256d s = _mm256_setzero_pd();
    __m256d comp = _mm256_setzero_pd();
    std::size_t i = 0;
    for (; i + 4 <= len; i += 4) lane_add(s, comp, loadf(i));

    alignas(32) double sl[4], cl[4];
    _mm256_store_pd(sl, s);
    _mm256_store_pd(cl, comp);
    Neumaier acc;
    for (int l = 0; l < 4; ++l) {
        acc.add(sl[l]);
        acc.add(cl[l]);
    }
    for (; i < len; ++i) acc.add(tailf(i));
    return acc.value();
}

template <class PerChunk>
double chunked(std::size_t n, PerChunk per_chunk) {
    Neumaier total;
    for (std::size_t base = 0; base < n; base += kChunk)
        total.add(per_chunk(base, n - base < kChunk ? n - base : kChunk));
    return total.value();
}

}  // namespace

double sum_sq_avx2(const double* x, std::size_t n) {
    return chunked(n, [&](std::size_t base, std::size_t len) {
        return chunk_reduce_avx2(
            len,
            [&](std::size_t i) {
                __m256d v = _mm256_loadu_pd(x + base + i);
                return _mm256_mul_pd(v, v);
            },
            [&](std::size_t i) {
                double v = x[base + i];
                return v * v;
            });
    });
}

double dot_avx2(const double* x, const double* y, std::size_t n) {
    return chunked(n, [&](std::size_t base, std::size_t len) {
        return chunk_reduce_avx2(
            len,
            [&](std::size_t i) {
                return _mm256_mul_pd(_mm256_loadu_pd(x + base + i),
                                     _mm256_loadu_pd(y + base + i));
            },
            [&](std::size_t i) { return x[base + i] * y[base + i]; });
    });
}

}  // namespace cuspsum::kern
