#pragma once

// Direct evaluation, inside absolute convergence, of the Rankin-Selberg
// series L(s,fxg), the shifted sums D_{f,g}(s;h), the symmetrized double sum
// Z(s,w,fxg), the diagonal+off-diagonal combination W(s;f,g), the partial-sum
// series D(s, S_f x S_g), and the main-term constants.
//
// Policy abscissa: direct sums require Re s >= 5/2, one unit inside the
// proven convergence boundary, so desk truncations have n^{-2}-ish tails.
// Every value carries a truncation bound; bounds built from the divisor or
// partial-sum envelopes are heuristic-envelope quality and say so in the CLI.

#include <complex>
#include <cstdint>

#include "cuspsum/complexfn.hpp"
#include "cuspsum/qseries.hpp"
#include "cuspsum/sums.hpp"

namespace cuspsum {

inline constexpr double kPolicyAbscissa = 2.5;

struct SeriesValue {
    cplx value{0.0, 0.0};
    double truncation_bound = 0.0;  // absolute
    std::int64_t n_used = 0;
};

// Empirical constant for the divisor envelope d(n) <= c * n^{0.1} on
// n in [1e3, 1e6] (computed once from a sieve, reported in outputs).
double divisor_envelope_constant();

// zeta(2s) * sum_{n<=N} a(n) b(n) n^{-s-k+1}, Re s > 1.
SeriesValue rankin_L(cplx s, const QExpansion& f, const QExpansion& g, std::int64_t N);

// Both routes to the smoothed main-term constant: the direct series
// Gamma(3/2)/(4 pi^2) sum a b n^{-k-1/2} and Gamma(3/2) L(3/2)/(4 pi^2 zeta(3)).
// The conjugated flag selects the S_f S_g convention; identical for the
// real-coefficient level-1 forms built here.
struct ConstantPair {
    cplx c_direct{0.0, 0.0};
    cplx c_lfun{0.0, 0.0};
    double discrepancy = 0.0;
    double direct_tail = 0.0;
    double lfun_tail = 0.0;
    // Residue of W(s;f,g) at s = 1/2: (k - 1/2) L(3/2,fxg) / (4 pi^2 zeta(3)).
    // Reported alongside, never asserted against c_direct (different object:
    // the smoothed main term carries Gamma(3/2), the residue carries k-1/2).
    cplx w_residue_half{0.0, 0.0};
    std::int64_t n_used = 0;
};
ConstantPair constant_C(const QExpansion& f, const QExpansion& g, std::int64_t N,
                        bool conjugated = false);

// D_{f,g}(s;h) = sum_n [a(n) b(n-h) + a(n-h) b(n)] n^{-s-k+1}; a(m)=0, m<=0.
SeriesValue shifted_D(cplx s, std::int64_t h, const QExpansion& f, const QExpansion& g,
                      std::int64_t N);

// Z(s,w,fxg) = sum_{h>=1} D_{f,g}(s;h) / h^w over n <= N, h < n.
// Deterministic h-ascending, n-ascending double loop (O(N^2)).
SeriesValue Z_sum(cplx s, cplx w, const QExpansion& f, const QExpansion& g, std::int64_t N);

// W(s;f,g) = L(s,fxg)/zeta(2s) + Z(s,0,fxg), evaluated in the regrouped
// one-pass form sum_n [a S_g(n) + b S_f(n) - a b](n) n^{-s-k+1}.
SeriesValue W_eval(cplx s, const QExpansion& f, const QExpansion& g, std::int64_t N);

// The per-n weights of that regrouped form, for quadrature callers that
// evaluate W(s - z) on a whole node grid.
std::vector<double> w_series_terms(const QExpansion& f, const QExpansion& g, std::int64_t N);

// D(s, S_f x S_g) = sum_n S_f(n) S_g(n) n^{-s-k+1} truncated at N
// (N < 0 means the full stored range).
SeriesValue D_series(cplx s, const PartialSumSeries& sf, const PartialSumSeries& sg,
                     bool conjugated = false, std::int64_t N = -1);

}  // namespace cuspsum
