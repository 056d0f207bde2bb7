#include "cuspsum/dirichlet.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

#include "cuspsum/kernels.hpp"

namespace cuspsum {

namespace {

constexpr double kGammaThreeHalves = 0.88622692545275801364908374167057259;  // Gamma(3/2)

struct CplxAcc {
    kern::Neumaier re, im;
    void add(cplx v) {
        re.add(v.real());
        im.add(v.imag());
    }
    cplx value() const { return {re.value(), im.value()}; }
};

void check_weights(const QExpansion& f, const QExpansion& g, const char* who) {
    if (f.weight != g.weight)
        throw domain_error(std::string(who) + ": forms must share one weight");
}

// n^{-s-k+1} for n = 1..N.
std::vector<cplx> power_table(cplx s, int k, std::int64_t N) {
    std::vector<cplx> pw(static_cast<std::size_t>(N) + 1);
    const cplx e = -s - (static_cast<double>(k) - 1.0);
    for (std::int64_t n = 1; n <= N; ++n)
        pw[static_cast<std::size_t>(n)] = std::exp(e * std::log(static_cast<double>(n)));
    return pw;
}

// int_N^inf t^p (ln t)^m dt for p < -1, m in {0,1,2}.
double tail_integral(double N, double p, int m) {
    const double q = -(p + 1.0);  // > 0
    const double Np1 = std::pow(N, p + 1.0);
    const double L = std::log(N);
    switch (m) {
        case 0: return Np1 / q;
        case 1: return Np1 * (L / q + 1.0 / (q * q));
        default: return Np1 * (L * L / q + 2.0 * L / (q * q) + 2.0 / (q * q * q));
    }
}

}  // namespace

double divisor_envelope_constant() {
    static const double c = [] {
        constexpr std::int64_t lo = 1000, hi = 1000000;
        std::vector<std::uint16_t> d(hi + 1, 0);
        for (std::int64_t q = 1; q <= hi; ++q)
            for (std::int64_t m = q; m <= hi; m += q) ++d[static_cast<std::size_t>(m)];
        double best = 0.0;
        for (std::int64_t n = lo; n <= hi; ++n)
            best = std::max(best, static_cast<double>(d[static_cast<std::size_t>(n)]) /
                                      std::pow(static_cast<double>(n), 0.1));
        return best;
    }();
    return c;
}

SeriesValue rankin_L(cplx s, const QExpansion& f, const QExpansion& g, std::int64_t N) {
    check_weights(f, g, "rankin_L");
    if (s.real() <= 1.0) throw domain_error("rankin_L: requires Re s > 1");
    if (N < 1 || N > f.n_max || N > g.n_max) throw domain_error("rankin_L: N out of range");

    auto pw = power_table(s, f.weight, N);
    CplxAcc acc;
    for (std::int64_t n = 1; n <= N; ++n)
        acc.add(f.a(n) * g.a(n) * pw[static_cast<std::size_t>(n)]);
    const cplx z2s = zeta(2.0 * s);

    SeriesValue out;
    out.n_used = N;
    out.value = z2s * acc.value();
    // Deligne: |a b| n^{-sigma-k+1} <= d(n)^2 n^{-sigma}; envelope d <= c n^{0.1}.
    const double sigma = s.real();
    const double c = divisor_envelope_constant();
    out.truncation_bound =
        sigma > 1.2
            ? std::abs(z2s) * c * c * tail_integral(static_cast<double>(N), 0.2 - sigma, 0)
            : INFINITY;
    return out;
}

ConstantPair constant_C(const QExpansion& f, const QExpansion& g, std::int64_t N,
                        bool conjugated) {
    check_weights(f, g, "constant_C");
    if (N < 1000) throw domain_error("constant_C: N must be >= 1e3");
    if (N > f.n_max || N > g.n_max) throw domain_error("constant_C: N out of range");
    (void)conjugated;  // real-coefficient level-1 forms: both conventions coincide

    const double k = static_cast<double>(f.weight);
    const double norm = kGammaThreeHalves / (4.0 * M_PI * M_PI);

    // direct route: sum a b n^{-k-1/2}
    kern::Neumaier acc;
    for (std::int64_t n = 1; n <= N; ++n)
        acc.add(f.a(n) * g.a(n) * std::pow(static_cast<double>(n), -k - 0.5));
    ConstantPair out;
    out.n_used = N;
    out.c_direct = norm * acc.value();

    // L-value route: Gamma(3/2) L(3/2, fxg) / (4 pi^2 zeta(3))
    SeriesValue L32 = rankin_L(cplx(1.5, 0.0), f, g, N);
    const cplx z3 = zeta(cplx(3.0, 0.0));
    out.c_lfun = norm * L32.value / z3;
    out.w_residue_half = (k - 0.5) / (4.0 * M_PI * M_PI) * L32.value / z3;

    const double c = divisor_envelope_constant();
    out.direct_tail = norm * c * c * tail_integral(static_cast<double>(N), -1.3, 0);
    out.lfun_tail = norm * L32.truncation_bound / std::abs(z3);
    out.discrepancy = std::abs(out.c_direct - out.c_lfun);
    return out;
}

SeriesValue shifted_D(cplx s, std::int64_t h, const QExpansion& f, const QExpansion& g,
                      std::int64_t N) {
    check_weights(f, g, "shifted_D");
    if (s.real() < kPolicyAbscissa)
        throw domain_error("shifted_D: policy requires Re s >= 5/2");
    if (h < 1 || h >= N) throw domain_error("shifted_D: requires 1 <= h < N");
    if (N > f.n_max || N > g.n_max) throw domain_error("shifted_D: N out of range");

    auto pw = power_table(s, f.weight, N);
    CplxAcc acc;
    for (std::int64_t n = h + 1; n <= N; ++n)  // a(n-h)=b(n-h)=0 for n <= h
        acc.add((f.a(n) * g.a(n - h) + f.a(n - h) * g.a(n)) * pw[static_cast<std::size_t>(n)]);

    SeriesValue out;
    out.n_used = N;
    out.value = acc.value();
    const double c = divisor_envelope_constant();
    out.truncation_bound =
        2.0 * c * c * tail_integral(static_cast<double>(N), 0.2 - s.real(), 0);
    return out;
}

SeriesValue Z_sum(cplx s, cplx w, const QExpansion& f, const QExpansion& g, std::int64_t N) {
    check_weights(f, g, "Z_sum");
    if (s.real() < kPolicyAbscissa || (s + w).real() < kPolicyAbscissa)
        throw domain_error("Z_sum: policy requires Re s >= 5/2 and Re(s+w) >= 5/2");
    if (N < 2 || N > f.n_max || N > g.n_max) throw domain_error("Z_sum: N out of range");

    auto pw = power_table(s, f.weight, N);
    CplxAcc acc;
    for (std::int64_t h = 1; h < N; ++h) {
        const cplx hw = std::exp(-w * std::log(static_cast<double>(h)));
        CplxAcc inner;
        for (std::int64_t n = h + 1; n <= N; ++n)
            inner.add((f.a(n) * g.a(n - h) + f.a(n - h) * g.a(n)) *
                      pw[static_cast<std::size_t>(n)]);
        acc.add(hw * inner.value());
    }

    SeriesValue out;
    out.n_used = N;
    out.value = acc.value();
    // Tail over n > N (all h < n): terms <= 2 c^2 n^{0.2-sigma} sum_{h<n} h^{-Re w}.
    const double c = divisor_envelope_constant();
    const double sigma = s.real(), rw = w.real();
    const double Nd = static_cast<double>(N);
    if (rw > 1.05) {
        out.truncation_bound =
            2.0 * c * c * (1.0 + 1.0 / (rw - 1.0)) * tail_integral(Nd, 0.2 - sigma, 0);
    } else {
        // sum_{h<n} h^{-rw} <= (1 + ln n) n^{max(0,1-rw)}
        out.truncation_bound =
            2.0 * c * c * tail_integral(Nd, 0.2 - sigma + std::max(0.0, 1.0 - rw), 1);
    }
    return out;
}

std::vector<double> w_series_terms(const QExpansion& f, const QExpansion& g, std::int64_t N) {
    check_weights(f, g, "W_eval");
    if (N < 1 || N > f.n_max || N > g.n_max) throw domain_error("W_eval: N out of range");
    std::vector<double> w(static_cast<std::size_t>(N) + 1, 0.0);
    kern::Neumaier sf, sg;
    for (std::int64_t n = 1; n <= N; ++n) {
        const double an = f.a(n), bn = g.a(n);
        sf.add(an);
        sg.add(bn);
        // a(n) S_g(n) + b(n) S_f(n) - a(n) b(n): the diagonal plus both
        // off-diagonal stripes of the (m,h) square at row n.
        w[static_cast<std::size_t>(n)] = an * sg.value() + bn * sf.value() - an * bn;
    }
    return w;
}

SeriesValue W_eval(cplx s, const QExpansion& f, const QExpansion& g, std::int64_t N) {
    if (s.real() < kPolicyAbscissa) throw domain_error("W_eval: policy requires Re s >= 5/2");
    auto w = w_series_terms(f, g, N);
    auto pw = power_table(s, f.weight, N);
    CplxAcc acc;
    double env = 0.0;
    const double k = static_cast<double>(f.weight);
    for (std::int64_t n = 1; n <= N; ++n) {
        acc.add(w[static_cast<std::size_t>(n)] * pw[static_cast<std::size_t>(n)]);
        env = std::max(env, std::abs(w[static_cast<std::size_t>(n)]) *
                                std::pow(static_cast<double>(n), -(k - 0.5)));
    }
    SeriesValue out;
    out.n_used = N;
    out.value = acc.value();
    // |w_n| <= env * n^{k-1/2} empirically; + 0.1 slack in the exponent.
    out.truncation_bound = env * tail_integral(static_cast<double>(N), 0.6 - s.real(), 0);
    return out;
}

SeriesValue D_series(cplx s, const PartialSumSeries& sf, const PartialSumSeries& sg,
                     bool conjugated, std::int64_t N) {
    if (sf.weight != sg.weight) throw domain_error("D_series: forms must share one weight");
    if (s.real() < kPolicyAbscissa) throw domain_error("D_series: policy requires Re s >= 5/2");
    if (N < 0) N = std::min(sf.n_max, sg.n_max);
    if (N < 1 || N > sf.n_max || N > sg.n_max) throw domain_error("D_series: N out of range");
    (void)conjugated;  // real-coefficient forms

    auto pw = power_table(s, sf.weight, N);
    CplxAcc acc;
    double env = 0.0;
    const double k = static_cast<double>(sf.weight);
    for (std::int64_t n = 1; n <= N; ++n) {
        const double t = sf.S(n) * sg.S(n);
        acc.add(t * pw[static_cast<std::size_t>(n)]);
        env = std::max(env, std::abs(t) * std::pow(static_cast<double>(n), -(k - 0.5)));
    }
    SeriesValue out;
    out.n_used = N;
    out.value = acc.value();
    // |S_f S_g|(n) <= env * n^{k-1/2} empirically (square-root cancellation
    // on average); the stated d-envelope for S would diverge at the policy
    // abscissa, so the partial-sum envelope is used instead.
    out.truncation_bound = env * tail_integral(static_cast<double>(N), 0.6 - s.real(), 0);
    return out;
}

}  // namespace cuspsum
