#pragma once

// Partial sums S_f(n) = sum_{m<=n} a(m) and the sharp-cutoff on-average
// statistics.  Everything here is compensated: the tau values reach 1e20+
// while S oscillates around n^{(k-1)/2+1/4}, so cancellation is severe.

#include <cstdint>
#include <string>
#include <vector>

#include "cuspsum/qseries.hpp"

namespace cuspsum {

struct PartialSumSeries {
    int weight = 0;
    std::string form_id;
    std::int64_t n_max = 0;
    std::vector<double> values;  // S(n) at index n
    std::vector<double> resid;   // Kahan compensation; S(n)+resid(n) ~ exact prefix

    double S(std::int64_t n) const {
        if (n < 1) return 0.0;
        if (n > n_max) throw domain_error("PartialSumSeries: index past n_max");
        return values[static_cast<std::size_t>(n)];
    }
};

PartialSumSeries partial_sums(const QExpansion& f);

// |S(X)| X^{-(k-1)/2 - 1/4}, the square-root-cancellation statistic.
double classical_statistic(const PartialSumSeries& s, std::int64_t X);

// C = 1/((4k+2) pi^2) * sum_{n<=N} a(n)^2 / n^{k+1/2} with a divisor-envelope
// tail estimate (labeled heuristic-envelope: d(t) <= t^{0.1} for t >= 1e3).
struct Eq4Constant {
    double value = 0.0;
    double tail_abs = 0.0;  // bound on the omitted part of C
    double tail_rel = 0.0;
    std::int64_t n_used = 0;
};
Eq4Constant cn_constant(const QExpansion& f, std::int64_t N);

struct AverageReport {
    std::int64_t X = 0;
    double lhs = 0.0;   // sum_{n<=X} S(n)^2
    double main = 0.0;  // C * X^{k+1/2}
    double ratio = 0.0;
    double C = 0.0;
    std::int64_t chunk_size = 0;  // reduction chunk recorded for reproducibility
    std::string omega_context;    // known Omega/O facts, context only, never asserted
};
AverageReport sharp_average(const PartialSumSeries& s, std::int64_t X, double C);

}  // namespace cuspsum
