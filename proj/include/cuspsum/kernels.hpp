#pragma once

// Arithmetic inner loops shared by the series generators and the summation
// code.  Each kernel has a scalar reference implementation and an AVX2
// variant; dispatch happens once at startup via cpuid and can be forced to
// scalar with CUSPSUM_NO_SIMD=1 (recorded in output metadata).
//
// axpy is elementwise fused-multiply-add in both variants, so scalar and
// AVX2 agree bit for bit.  The compensated reductions fix the chunk size at
// 2^16 and merge chunk partials in index order, so results are reproducible
// run to run for a given variant; scalar vs AVX2 differ only in
// within-chunk rounding and are equivalence-tested to a few ulp.

#include <cstddef>
#include <cstdint>

namespace cuspsum::kern {

inline constexpr std::size_t kChunk = std::size_t{1} << 16;

enum class Isa { scalar, avx2 };

Isa active();
const char* isa_name();
void force_scalar(bool on);  // for tests and --no-simd

// dst[i] += c * src[i], single rounding per element.
void axpy(double* dst, const double* src, std::size_t n, double c);
void axpy_scalar(double* dst, const double* src, std::size_t n, double c);
void axpy_avx2(double* dst, const double* src, std::size_t n, double c);

// Neumaier-compensated sum of x[i]^2, fixed-chunk reduction.
double sum_sq(const double* x, std::size_t n);
double sum_sq_scalar(const double* x, std::size_t n);
double sum_sq_avx2(const double* x, std::size_t n);

// Neumaier-compensated sum of x[i]*y[i].
double dot(const double* x, const double* y, std::size_t n);
double dot_scalar(const double* x, const double* y, std::size_t n);
double dot_avx2(const double* x, const double* y, std::size_t n);

// Running compensated accumulator for scalar code paths.
struct Neumaier {
    double s = 0.0;
    double c = 0.0;
    void add(double x) {
        double t = s + x;
        if ((s < 0 ? -s : s) >= (x < 0 ? -x : x))
            c += (s - t) + x;
        else
            c += (x - t) + s;
        s = t;
    }
    double value() const { return s + c; }
};

}  // namespace cuspsum::kern
