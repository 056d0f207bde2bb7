#include "cuspsum/mellin.hpp"

#include <algorithm>
#include <cmath>

#include "cuspsum/kernels.hpp"

namespace cuspsum {

namespace {

void check_spec(const ContourSpec& spec) {
    if (!(spec.height > 0.0) || !(spec.step > 0.0))
        throw domain_error("contour: height and step must be positive");
    if (spec.height / spec.step > 1e7) throw domain_error("contour: node budget exceeded");
}

// Node grid symmetric about 0 at spacing h/2, snapping T up to a multiple of h.
std::vector<double> refined_grid(const ContourSpec& spec, std::int64_t& half_m) {
    const std::int64_t m = static_cast<std::int64_t>(std::ceil(spec.height / spec.step - 1e-12));
    half_m = 2 * m;  // refined half-count
    std::vector<double> ts(static_cast<std::size_t>(4 * m + 1));
    const double h2 = spec.step / 2.0;
    for (std::int64_t j = 0; j <= 4 * m; ++j)
        ts[static_cast<std::size_t>(j)] = h2 * static_cast<double>(j - 2 * m);
    return ts;
}

LineIntegral integrate_values(const std::vector<double>& ts, const std::vector<cplx>& vals,
                              double h2, double decay_c) {
    const std::size_t J = ts.size();
    kern::Neumaier fre, fim, cre, cim, l1;
    for (std::size_t j = 0; j < J; ++j) {
        const double w = (j == 0 || j == J - 1) ? 0.5 : 1.0;
        fre.add(w * vals[j].real());
        fim.add(w * vals[j].imag());
        l1.add(w * std::abs(vals[j]));
        if (j % 2 == 0) {
            const double wc = (j == 0 || j == J - 1) ? 0.5 : 1.0;
            cre.add(wc * vals[j].real());
            cim.add(wc * vals[j].imag());
        }
    }
    const double tp = 2.0 * M_PI;
    LineIntegral out;
    out.value = cplx(fre.value(), fim.value()) * (h2 / tp);
    const cplx coarse = cplx(cre.value(), cim.value()) * (2.0 * h2 / tp);
    out.endpoint_magnitude = std::max(std::abs(vals.front()), std::abs(vals.back()));
    const double tail = out.endpoint_magnitude / (decay_c * M_PI);
    out.error_estimate = std::abs(out.value - coarse) + tail;
    out.factor_l1 = l1.value() * (h2 / tp);
    out.nodes = static_cast<std::int64_t>(J);

    // Honesty checks: refuse if the cutoff visibly truncates mass.
    const double mag = std::abs(out.value);
    if (out.endpoint_magnitude > 1e-3 * mag)
        throw quadrature_error(
            "contour: integrand magnitude at +-iT is " + std::to_string(out.endpoint_magnitude) +
            " vs accumulated |integral| " + std::to_string(mag) +
            "; raise the height cutoff (decay check failed)");
    return out;
}

LineIntegral run_batch(const BatchIntegrand& F, const ContourSpec& spec, double decay_c) {
    check_spec(spec);
    if (!(decay_c > 0.0)) throw domain_error("contour: caller must assert a decay constant c > 0");
    std::int64_t half_m = 0;
    ContourSpec cur = spec;
    LineIntegral out;
    for (int level = 0;; ++level) {
        auto ts = refined_grid(cur, half_m);
        std::vector<cplx> vals(ts.size());
        F(ts, cur.abscissa, vals);
        out = integrate_values(ts, vals, cur.step / 2.0, decay_c);
        if (spec.rule == ContourSpec::Rule::trapezoid) return out;
        // adaptive (diagnostic): halve the step until the Richardson term
        // stops improving, at most 3 extra levels.
        if (level >= 3 || out.error_estimate <= 1e-12 * std::max(1.0, std::abs(out.value)))
            return out;
        cur.step /= 2.0;
    }
}

}  // namespace

LineIntegral line_integral_batch(const BatchIntegrand& F, const ContourSpec& spec,
                                 double decay_c) {
    return run_batch(F, spec, decay_c);
}

LineIntegral line_integral(const std::function<cplx(cplx)>& F, const ContourSpec& spec,
                           double decay_c) {
    return run_batch(
        [&](const std::vector<double>& ts, double abscissa, std::vector<cplx>& out) {
            for (std::size_t j = 0; j < ts.size(); ++j) out[j] = F(cplx(abscissa, ts[j]));
        },
        spec, decay_c);
}

IdentityReport barnes_check(cplx beta, double t, const ContourSpec& spec) {
    if (!(spec.abscissa < 0.0) || !(spec.abscissa > -beta.real()))
        throw domain_error("barnes_check: requires 0 > abscissa > -Re beta");
    if (!(t > 0.0)) throw domain_error("barnes_check: requires t > 0 (|arg t| < pi)");

    const double logt = std::log(t);
    auto F = [&](cplx z) {
        return std::exp(log_gamma(-z) + log_gamma(beta + z) + z * logt);
    };
    // |Gamma(-z)Gamma(beta+z)| ~ e^{-pi |Im z|} up to polynomial factors.
    LineIntegral li = line_integral(F, spec, 2.0);

    IdentityReport rep;
    rep.lhs = li.value;
    rep.rhs = std::exp(log_gamma(beta) - beta * std::log1p(t));
    rep.abs_diff = std::abs(rep.lhs - rep.rhs);
    rep.rel_diff = rep.abs_diff / std::max({std::abs(rep.lhs), std::abs(rep.rhs), 1e-300});
    rep.quadrature_error_estimate = li.error_estimate;
    rep.truncation_bounds = 0.0;
    rep.nodes = li.nodes;
    return rep;
}

IdentityReport verify_decomposition(cplx s, const QExpansion& f, const QExpansion& g,
                                    std::int64_t N, const ContourSpec& spec) {
    if (s.real() < 6.0) throw domain_error("verify_decomposition: requires Re s >= 6");
    const double gam = spec.abscissa;
    if (!(gam > 1.0) || !(gam <= s.real() - kPolicyAbscissa))
        throw domain_error("verify_decomposition: requires 1 < gamma <= Re s - 5/2");

    const int k = f.weight;
    auto sums_f = partial_sums(f);
    auto sums_g = partial_sums(g);
    SeriesValue lhs = D_series(s, sums_f, sums_g, false, N);
    SeriesValue w_at_s = W_eval(s, f, g, N);

    // W(s-z) on the whole node grid by per-n rotor recurrence:
    //   W(s-z_j) = sum_n q_n e^{i t_j ln n},  q_n = w_n n^{-(s-gam)-k+1}.
    auto wterms = w_series_terms(f, g, N);
    const cplx lg_denom = log_gamma(s + static_cast<double>(k) - 1.0);
    auto batch = [&](const std::vector<double>& ts, double abscissa, std::vector<cplx>& out) {
        const std::size_t J = ts.size();
        std::vector<cplx> acc(J, cplx(0.0, 0.0));
        const cplx expo = -(s - abscissa) - (static_cast<double>(k) - 1.0);
        const double dt = ts[1] - ts[0];
        for (std::int64_t n = 1; n <= N; ++n) {
            const double ln = std::log(static_cast<double>(n));
            const cplx q = wterms[static_cast<std::size_t>(n)] * std::exp(expo * ln);
            const cplx rot = std::polar(1.0, dt * ln);
            cplx v = q * std::polar(1.0, ts[0] * ln);
            for (std::size_t j = 0; j < J; ++j) {
                acc[j] += v;
                v *= rot;
            }
        }
        for (std::size_t j = 0; j < J; ++j) {
            const cplx z(abscissa, ts[j]);
            out[j] = acc[j] * zeta(z) *
                     std::exp(log_gamma(z) + log_gamma(s - z + static_cast<double>(k) - 1.0) -
                              lg_denom);
        }
    };
    // Gamma(z) Gamma(s-z+k-1) decays like e^{-pi |t|} once |t| >> |Im s|.
    LineIntegral li = line_integral_batch(batch, spec, 2.0);

    // Truncation of W(s-z) along the line is worst at Re(s-z) = Re s - gam.
    SeriesValue w_line = W_eval(cplx(s.real() - gam, 0.0), f, g, N);

    IdentityReport rep;
    rep.lhs = lhs.value;
    rep.rhs = w_at_s.value + li.value;
    rep.abs_diff = std::abs(rep.lhs - rep.rhs);
    rep.rel_diff = rep.abs_diff / std::max({std::abs(rep.lhs), std::abs(rep.rhs), 1e-300});
    rep.quadrature_error_estimate = li.error_estimate;
    rep.truncation_bounds = lhs.truncation_bound + w_at_s.truncation_bound +
                            w_line.truncation_bound * li.factor_l1 /
                                std::max(1e-300, std::abs(w_line.value));
    rep.nodes = li.nodes;
    return rep;
}

IdentityReport verify_smoothing_transform(double X, const QExpansion& f, const QExpansion& g,
                                          std::int64_t N, const ContourSpec& spec) {
    if (std::abs(spec.abscissa - 4.0) > 1e-9)
        throw domain_error("verify_smoothing_transform: the line is pinned at sigma = 4");
    if (!(X >= 1.0) || X > static_cast<double>(N) / 30.0)
        throw domain_error("verify_smoothing_transform: X must lie in [1, N/30]");
    if (N > f.n_max || N > g.n_max)
        throw domain_error("verify_smoothing_transform: N out of range");

    const int k = f.weight;
    auto sums_f = partial_sums(f);
    auto sums_g = partial_sums(g);

    // rhs: direct smoothed sum, same truncation N.
    kern::Neumaier rhs_acc;
    double env = 0.0;
    for (std::int64_t n = 1; n <= N; ++n) {
        const double ssn = sums_f.S(n) * sums_g.S(n);
        const double nd = static_cast<double>(n);
        rhs_acc.add(ssn * std::pow(nd, 1.0 - static_cast<double>(k)) * std::exp(-nd / X));
        env = std::max(env, std::abs(ssn) * std::pow(nd, -(static_cast<double>(k) - 0.5)));
    }

    // lhs: quadrature of D(s) X^s Gamma(s) over Re s = 4.
    const double logX = std::log(X);
    auto batch = [&](const std::vector<double>& ts, double abscissa, std::vector<cplx>& out) {
        const std::size_t J = ts.size();
        std::vector<cplx> acc(J, cplx(0.0, 0.0));
        const double expo = -abscissa - (static_cast<double>(k) - 1.0);
        const double dt = ts[1] - ts[0];
        for (std::int64_t n = 1; n <= N; ++n) {
            const double ln = std::log(static_cast<double>(n));
            const cplx q = sums_f.S(n) * sums_g.S(n) * std::exp(expo * ln);
            const cplx rot = std::polar(1.0, -dt * ln);
            cplx v = q * std::polar(1.0, -ts[0] * ln);
            for (std::size_t j = 0; j < J; ++j) {
                acc[j] += v;
                v *= rot;
            }
        }
        for (std::size_t j = 0; j < J; ++j) {
            const cplx z(abscissa, ts[j]);
            out[j] = acc[j] * std::exp(z * logX + log_gamma(z));
        }
    };
    LineIntegral li = line_integral_batch(batch, spec, 1.2);  // Gamma decay e^{-pi|t|/2}

    IdentityReport rep;
    rep.lhs = li.value;
    rep.rhs = cplx(rhs_acc.value(), 0.0);
    rep.abs_diff = std::abs(rep.lhs - rep.rhs);
    rep.rel_diff = rep.abs_diff / std::max({std::abs(rep.lhs), std::abs(rep.rhs), 1e-300});
    rep.quadrature_error_estimate = li.error_estimate;
    // Both sides share the truncation termwise; report the omitted tail of
    // the smoothed sum (e^{-n/X} envelope past N) for context.
    const double a = static_cast<double>(N) / X;
    rep.truncation_bounds = env * std::pow(X, 1.6) * std::exp(-a) * (std::pow(a, 0.6) + 1.6);
    rep.nodes = li.nodes;
    return rep;
}

}  // namespace cuspsum
