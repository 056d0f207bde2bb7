#include "cuspsum/kernels.hpp"

#include <cmath>
#include <cstdlib>

namespace cuspsum::kern {

namespace {

bool forced_scalar = false;

bool env_no_simd() {
    const char* v = std::getenv("CUSPSUM_NO_SIMD");
    return v && v[0] && v[0] != '0';
}

Isa detect() {
#if defined(__x86_64__) || defined(__i386__)
    if (__builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma"))
        return Isa::avx2;
#endif
    return Isa::scalar;
}

}  // namespace

Isa active() {
    static const Isa hw = detect();
    if (forced_scalar || env_no_simd()) return Isa::scalar;
    return hw;
}

const char* isa_name() { return active() == Isa::avx2 ? "avx2" : "scalar"; }

void force_scalar(bool on) { forced_scalar = on; }

void axpy_scalar(double* dst, const double* src, std::size_t n, double c) {
    for (std::size_t i = 0; i < n; ++i) dst[i] = std::fma(c, src[i], dst[i]);
}

void axpy(double* dst, const double* src, std::size_t n, double c) {
    if (active() == Isa::avx2)
        axpy_avx2(dst, src, n, c);
    else
        axpy_scalar(dst, src, n, c);
}

namespace {

// One chunk (<= kChunk elements), Neumaier over f(i).
template <class F>
double chunk_reduce_scalar(std::size_t n, F f) {
    Neumaier acc;
    for (std::size_t i = 0; i < n; ++i) acc.add(f(i));
    return acc.value();
}

template <class PerChunk>
double chunked(std::size_t n, PerChunk per_chunk) {
    Neumaier total;
    for (std::size_t base = 0; base < n; base += kChunk)
        total.add(per_chunk(base, n - base < kChunk ? n - base : kChunk));
    if (n == 0) return 0.0;
    return total.value();
}

}  // namespace

double sum_sq_scalar(const double* x, std::size_t n) {
    return chunked(n, [&](std::size_t base, std::size_t len) {
        return chunk_reduce_scalar(len, [&](std::size_t i) {
            double v = x[base + i];
            return v * v;
        });
    });
}

double dot_scalar(const double* x, const double* y, std::size_t n) {
    return chunked(n, [&](std::size_t base, std::size_t len) {
        return chunk_reduce_scalar(len,
                                   [&](std::size_t i) { return x[base + i] * y[base + i]; });
    });
}

double sum_sq(const double* x, std::size_t n) {
    return active() == Isa::avx2 ? sum_sq_avx2(x, n) : sum_sq_scalar(x, n);
}

double dot(const double* x, const double* y, std::size_t n) {
    return active() == Isa::avx2 ? dot_avx2(x, y, n) : dot_scalar(x, y, n);
}

}  // namespace cuspsum::kern
