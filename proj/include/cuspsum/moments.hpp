#pragma once

// The headline experiment: smoothed second moments
//   (1/X) sum_n S_f(n) S_g(n) n^{1-k} e^{-n/X}
// against the main term C X^{1/2}, with the residual's error exponent fitted
// by least squares on a geometric X grid.

#include <cstdint>
#include <string>
#include <vector>

#include "cuspsum/dirichlet.hpp"
#include "cuspsum/sums.hpp"

namespace cuspsum {

struct SmoothedMoment {
    double value = 0.0;
    double tail_bound = 0.0;  // absolute, e^{-n_max/X} * partial-sum envelope
    std::int64_t n_used = 0;
};

// Requires n_max >= 30 X (puts the exponential tail below e^{-30}); the sum
// itself runs over everything available.
SmoothedMoment smoothed_moment(double X, const PartialSumSeries& sf, const PartialSumSeries& sg,
                               int k, bool conjugated = false);

struct ExponentFit {
    double slope = 0.0;
    double stderr_slope = 0.0;   // residual standard error of the fitted slope
    std::vector<int> excluded;   // indices with |r| below 10x the noise floor
    int points_used = 0;
};

// Least-squares slope of log|residual| vs log X.  Needs >= 6 points spanning
// >= 2 decades; throws domain_error("degenerate fit") if exclusion leaves
// fewer than 2 points.
ExponentFit exponent_fit(const std::vector<double>& X, const std::vector<double>& residual,
                         const std::vector<double>& noise_floor);

struct MomentRow {
    double X = 0.0;
    double smoothed = 0.0;
    double main = 0.0;      // C sqrt(X)
    double residual = 0.0;  // smoothed - main
    double ratio = 0.0;     // smoothed / main
    double tail_bound = 0.0;
    double secondary_main = 0.0;  // (k-1/2) C0 sqrt(pi) X^{-1/2}, diagnostic only
};

struct MomentReport {
    std::string form_id;
    int weight = 0;
    bool conjugated = false;
    std::vector<MomentRow> rows;
    double C = 0.0;       // Gamma(3/2)/(4 pi^2) sum a b n^{-k-1/2}
    double C_tail = 0.0;  // truncation bound on C
    ExponentFit fit;
    double theta_used = 0.0;
    std::string theta_note;
    std::int64_t n_used = 0;
};

// grid must be strictly increasing; both forms must extend to 30 * max(grid).
MomentReport run_experiment(const QExpansion& f, const QExpansion& g,
                            const std::vector<double>& grid, bool conjugated = false);

// The default and large experiment grids: X = 100 * 10^{j/3}.
std::vector<double> geometric_grid(double lo, double hi, int points);

}  // namespace cuspsum
