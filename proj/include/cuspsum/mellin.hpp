#pragma once

// Vertical-line quadrature and the three identity checks: the Barnes
// integral, the diagonal/off-diagonal decomposition of D(s, S_f x S_g), and
// the exp(-n/X) smoothing transform.
//
// Trapezoid on a vertical line: the integrands are analytic in a strip, so
// the rule converges geometrically in 1/h.  Every result carries an error
// estimate = |step-halving difference| + endpoint tail, and a run is
// accepted only if the integrand magnitude at +-iT is below 1e-3 of the
// accumulated integral magnitude.

#include <complex>
#include <cstdint>
#include <functional>
#include <vector>

#include "cuspsum/dirichlet.hpp"

namespace cuspsum {

struct ContourSpec {
    double abscissa = 2.0;  // the gamma or sigma of the line
    double height = 80.0;   // T; chosen so Gamma-decay exp(-pi T/2) clears 1e-8
    double step = 0.05;
    enum class Rule { trapezoid, adaptive } rule = Rule::trapezoid;
};

struct LineIntegral {
    cplx value{0.0, 0.0};     // (1/2 pi i) int F dz on the truncated line
    double error_estimate = 0.0;  // step-halving difference + decay tail
    double endpoint_magnitude = 0.0;
    double factor_l1 = 0.0;  // (1/2pi) int |F| |dz|, for propagating inner bounds
    std::int64_t nodes = 0;
};

// Pointwise integrand F(z) on the line z = abscissa + i t.
LineIntegral line_integral(const std::function<cplx(cplx)>& F, const ContourSpec& spec,
                           double decay_c);

// Batch integrand: fill out[j] = F(abscissa + i ts[j]).  Lets callers sweep
// Dirichlet sums over the whole node grid with per-n rotor recurrences.
using BatchIntegrand =
    std::function<void(const std::vector<double>& ts, double abscissa, std::vector<cplx>& out)>;
LineIntegral line_integral_batch(const BatchIntegrand& F, const ContourSpec& spec,
                                 double decay_c);

struct IdentityReport {
    cplx lhs{0.0, 0.0};
    cplx rhs{0.0, 0.0};
    double abs_diff = 0.0;
    double rel_diff = 0.0;  // against max(|lhs|, |rhs|, 1e-300)
    double quadrature_error_estimate = 0.0;
    double truncation_bounds = 0.0;
    std::int64_t nodes = 0;
};

// (1/2 pi i) int Gamma(-z) Gamma(beta+z) t^z dz  vs  Gamma(beta) (1+t)^{-beta},
// valid for 0 > abscissa > -Re beta and t > 0.
IdentityReport barnes_check(cplx beta, double t, const ContourSpec& spec);

// D(s, S_f x S_g)  vs  W(s) + (1/2 pi i) int W(s-z) zeta(z)
//   Gamma(z) Gamma(s-z+k-1) / Gamma(s+k-1) dz  on Re z = spec.abscissa.
// Requires Re s >= 6 and 1 < abscissa <= Re s - 5/2 (the W policy region).
IdentityReport verify_decomposition(cplx s, const QExpansion& f, const QExpansion& g,
                                    std::int64_t N, const ContourSpec& spec);

// (1/2 pi i) int_(4) D(s) X^s Gamma(s) ds  vs  sum S_f S_g n^{1-k} e^{-n/X}.
IdentityReport verify_smoothing_transform(double X, const QExpansion& f, const QExpansion& g,
                                          std::int64_t N, const ContourSpec& spec);

}  // namespace cuspsum
