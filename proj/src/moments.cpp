#include "cuspsum/moments.hpp"

#include <algorithm>
#include <cmath>

#include "cuspsum/kernels.hpp"

namespace cuspsum {

namespace {
constexpr double kGammaThreeHalves = 0.88622692545275801364908374167057259;
}

SmoothedMoment smoothed_moment(double X, const PartialSumSeries& sf, const PartialSumSeries& sg,
                               int k, bool conjugated) {
    if (sf.weight != sg.weight || sf.weight != k)
        throw domain_error("smoothed_moment: weight mismatch");
    const std::int64_t N = std::min(sf.n_max, sg.n_max);
    if (!(X > 0.0)) throw domain_error("smoothed_moment: X must be positive");
    if (static_cast<double>(N) < 30.0 * X)
        throw domain_error("smoothed_moment: insufficient coefficients (need n_max >= 30 X)");
    (void)conjugated;  // real coefficients: both conventions coincide

    kern::Neumaier acc;
    double env = 0.0;
    const double kk = static_cast<double>(k);
    for (std::int64_t n = 1; n <= N; ++n) {
        const double nd = static_cast<double>(n);
        const double ss = sf.S(n) * sg.S(n);
        acc.add(ss * std::pow(nd, 1.0 - kk) * std::exp(-nd / X));
        env = std::max(env, std::abs(ss) * std::pow(nd, -(kk - 0.5)));
    }
    SmoothedMoment out;
    out.n_used = N;
    out.value = acc.value() / X;
    // |S_f S_g|(n) <= env n^{k-1/2} (+0.1 exponent slack), so the omitted
    // part is below (env/X) int_N^inf t^{0.6} e^{-t/X} dt.
    const double a = static_cast<double>(N) / X;
    out.tail_bound = (env / X) * std::pow(X, 1.6) * std::exp(-a) * (std::pow(a, 0.6) + 1.6);
    return out;
}

ExponentFit exponent_fit(const std::vector<double>& X, const std::vector<double>& residual,
                         const std::vector<double>& noise_floor) {
    const std::size_t m = X.size();
    if (m != residual.size() || m != noise_floor.size())
        throw domain_error("exponent_fit: mismatched inputs");
    if (m < 6) throw domain_error("exponent_fit: need at least 6 grid points");
    if (!(X.back() / X.front() >= 99.0))
        throw domain_error("exponent_fit: grid must span at least two decades");

    ExponentFit fit;
    std::vector<double> lx, ly;
    for (std::size_t i = 0; i < m; ++i) {
        if (std::abs(residual[i]) < 10.0 * noise_floor[i] || residual[i] == 0.0) {
            fit.excluded.push_back(static_cast<int>(i));
            continue;
        }
        lx.push_back(std::log(X[i]));
        ly.push_back(std::log(std::abs(residual[i])));
    }
    const std::size_t n = lx.size();
    if (n < 2) throw domain_error("exponent_fit: degenerate fit (all points excluded)");

    double mx = 0.0, my = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        mx += lx[i];
        my += ly[i];
    }
    mx /= static_cast<double>(n);
    my /= static_cast<double>(n);
    double sxx = 0.0, sxy = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        sxx += (lx[i] - mx) * (lx[i] - mx);
        sxy += (lx[i] - mx) * (ly[i] - my);
    }
    fit.slope = sxy / sxx;
    const double intercept = my - fit.slope * mx;
    double sse = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double e = ly[i] - (intercept + fit.slope * lx[i]);
        sse += e * e;
    }
    fit.stderr_slope = n > 2 ? std::sqrt(sse / static_cast<double>(n - 2) / sxx) : 0.0;
    fit.points_used = static_cast<int>(n);
    return fit;
}

std::vector<double> geometric_grid(double lo, double hi, int points) {
    if (points < 2 || !(hi > lo) || !(lo > 0.0))
        throw domain_error("geometric_grid: need lo < hi, points >= 2");
    std::vector<double> g(static_cast<std::size_t>(points));
    const double r = std::log(hi / lo) / static_cast<double>(points - 1);
    for (int j = 0; j < points; ++j)
        g[static_cast<std::size_t>(j)] = lo * std::exp(r * static_cast<double>(j));
    g.back() = hi;
    return g;
}

MomentReport run_experiment(const QExpansion& f, const QExpansion& g,
                            const std::vector<double>& grid, bool conjugated) {
    if (grid.empty() || !std::is_sorted(grid.begin(), grid.end()) ||
        std::adjacent_find(grid.begin(), grid.end()) != grid.end())
        throw domain_error("run_experiment: grid must be strictly increasing");
    if (f.weight != g.weight) throw domain_error("run_experiment: weight mismatch");

    MomentReport rep;
    rep.form_id = f.form_id == g.form_id ? f.form_id : f.form_id + "," + g.form_id;
    rep.weight = f.weight;
    rep.conjugated = conjugated;
    rep.theta_used = 0.0;
    rep.theta_note =
        "level 1 (SL2(Z)): no exceptional Maass eigenvalues, so the Selberg "
        "parameter theta is 0; recorded for the error exponent only, no "
        "computation depends on it";

    auto sf = partial_sums(f);
    auto sg = partial_sums(g);
    rep.n_used = std::min(sf.n_max, sg.n_max);

    ConstantPair cp = constant_C(f, g, std::min<std::int64_t>(rep.n_used, 100000), conjugated);
    rep.C = cp.c_direct.real();
    rep.C_tail = cp.direct_tail;
    const double c0 = rep.C / kGammaThreeHalves;
    const double kk = static_cast<double>(f.weight);

    std::vector<double> xs, rs, floors;
    for (double X : grid) {
        SmoothedMoment sm = smoothed_moment(X, sf, sg, f.weight, conjugated);
        MomentRow row;
        row.X = X;
        row.smoothed = sm.value;
        row.main = rep.C * std::sqrt(X);
        row.residual = sm.value - row.main;
        row.ratio = sm.value / row.main;
        row.tail_bound = sm.tail_bound;
        // The X^{1/2} contribution of the diagonal+off-diagonal piece W alone
        // (before division by X it is the lower-order bracket term).
        row.secondary_main = (kk - 0.5) * c0 * std::sqrt(M_PI) / std::sqrt(X);
        rep.rows.push_back(row);
        xs.push_back(X);
        rs.push_back(row.residual);
        floors.push_back(row.tail_bound + rep.C_tail * std::sqrt(X));
    }
    if (grid.size() >= 6) rep.fit = exponent_fit(xs, rs, floors);
    return rep;
}

}  // namespace cuspsum
