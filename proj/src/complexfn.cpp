#include "cuspsum/complexfn.hpp"

#include <cmath>

#include "cuspsum/kernels.hpp"

namespace cuspsum {

namespace {

constexpr double kPi = 3.14159265358979323846264338327950288;
constexpr double kLogSqrt2Pi = 0.91893853320467274178032973640561764;

// Lanczos coefficients, g = 607/128, 15 terms (P. Godfrey's tabulation).
constexpr double kLanczosG = 607.0 / 128.0;
constexpr double kLanczosC[15] = {
    0.99999999999999709182,     57.156235665862923517,     -59.597960355475491248,
    14.136097974741747174,      -0.49191381609762019978,   0.33994649984811888699e-4,
    0.46523628927048575665e-4,  -0.98374475304879564677e-4, 0.15808870322491248884e-3,
    -0.21026444172410488319e-3, 0.21743961811521264320e-3, -0.16431810653676389022e-3,
    0.84418223983852743293e-4,  -0.26190838401581408670e-4, 0.36899182659531622704e-5,
};

// Even-index Bernoulli numbers B_2..B_40 (odd ones past B_1 vanish).
constexpr double kBernoulli2r[20] = {
    1.0 / 6.0,
    -1.0 / 30.0,
    1.0 / 42.0,
    -1.0 / 30.0,
    5.0 / 66.0,
    -691.0 / 2730.0,
    7.0 / 6.0,
    -3617.0 / 510.0,
    43867.0 / 798.0,
    -174611.0 / 330.0,
    854513.0 / 138.0,
    -236364091.0 / 2730.0,
    8553103.0 / 6.0,
    -23749461029.0 / 870.0,
    8615841276005.0 / 14322.0,
    -7709321041217.0 / 510.0,
    2577687858367.0 / 6.0,
    -26315271553053477373.0 / 1919190.0,
    2929993913841559.0 / 6.0,
    -261082718496449122051.0 / 13530.0,
};

void check_finite_input(cplx z, const char* who) {
    if (!std::isfinite(z.real()) || !std::isfinite(z.imag()))
        throw domain_error(std::string(who) + ": non-finite argument");
}

bool is_nonpositive_integer(cplx z) {
    return z.imag() == 0.0 && z.real() <= 0.0 && z.real() == std::floor(z.real());
}

// Lanczos series A(x) for z = x + 1, valid for Re z >= 0.5.
cplx lanczos_sum(cplx x) {
    cplx a = kLanczosC[0];
    for (int k = 1; k < 15; ++k) a += kLanczosC[k] / (x + static_cast<double>(k));
    return a;
}

// log Gamma restricted to Re z >= 0.5.
cplx log_gamma_right(cplx z) {
    cplx x = z - 1.0;
    cplx t = x + kLanczosG + 0.5;
    return kLogSqrt2Pi + (x + 0.5) * std::log(t) - t + std::log(lanczos_sum(x));
}

// log sin(pi z) without overflow, continuous in Im z on either half plane.
// For Im z > 0:  sin(pi z) = -exp(-i pi z)/(2i) * (1 - exp(2 pi i z)),
// and |exp(2 pi i z)| < 1 keeps the final log principal.
cplx log_sin_pi(cplx z) {
    if (z.imag() > 0.0) {
        cplx i(0.0, 1.0);
        return -i * kPi * z + std::log(1.0 - std::exp(2.0 * kPi * i * z)) -
               std::log(cplx(0.0, 2.0)) + cplx(0.0, kPi);
        // -1/(2i) = exp(i pi)/(2i); folding the sign into the phase keeps the
        // imaginary part continuous instead of jumping at sign changes of Re.
    }
    if (z.imag() < 0.0) return std::conj(log_sin_pi(std::conj(z)));
    return std::log(std::sin(kPi * z.real()) + cplx(0.0, 0.0));
}

}  // namespace

cplx log_gamma(cplx z) {
    check_finite_input(z, "log_gamma");
    if (is_nonpositive_integer(z)) throw pole_error("log_gamma: pole at non-positive integer");
    if (z.real() >= 0.5) return log_gamma_right(z);
    // Reflection: log Gamma(z) = log pi - log sin(pi z) - log Gamma(1 - z).
    return std::log(kPi) - log_sin_pi(z) - log_gamma_right(1.0 - z);
}

cplx gamma(cplx z) {
    check_finite_input(z, "gamma");
    if (is_nonpositive_integer(z)) throw pole_error("gamma: pole at non-positive integer");
    if (z.real() >= 0.5) {
        cplx x = z - 1.0;
        cplx t = x + kLanczosG + 0.5;
        cplx r = std::sqrt(2.0 * kPi) * std::exp((x + 0.5) * std::log(t) - t) * lanczos_sum(x);
        if (!std::isfinite(r.real()) || !std::isfinite(r.imag()))
            throw domain_error("gamma: overflow; use log_gamma");
        return r;
    }
    if (std::abs(z.imag()) > 20.0) return std::exp(log_gamma(z));  // sin(pi z) would overflow
    cplx r = kPi / (std::sin(kPi * z) * gamma(1.0 - z));
    if (!std::isfinite(r.real()) || !std::isfinite(r.imag()))
        throw domain_error("gamma: overflow in reflection; use log_gamma");
    return r;
}

cplx zeta_em(cplx z, int nodes, int order) {
    check_finite_input(z, "zeta");
    if (z.real() <= 0.0)
        throw unsupported_error("zeta: Re z <= 0 not supported (no continuation implemented)");
    if (z == cplx(1.0, 0.0)) throw pole_error("zeta: pole at z = 1");
    if (order < 1) order = 1;
    if (order > 20) order = 20;
    const double nd = static_cast<double>(nodes);

    kern::Neumaier re, im;
    auto add = [&](cplx v) {
        re.add(v.real());
        im.add(v.imag());
    };
    for (int n = 1; n < nodes; ++n) add(std::exp(-z * std::log(static_cast<double>(n))));
    const cplx npow = std::exp(-z * std::log(nd));  // nodes^{-z}
    add(npow * nd / (z - 1.0));                     // nodes^{1-z}/(z-1)
    add(0.5 * npow);

    // Correction terms B_{2r}/(2r)! * z(z+1)...(z+2r-2) * nodes^{-z-2r+1}.
    cplx poch = z;
    double fact = 2.0;
    cplx pw = npow / nd;  // nodes^{-z-1}
    for (int r = 1; r <= order; ++r) {
        add(kBernoulli2r[r - 1] / fact * poch * pw);
        poch *= (z + static_cast<double>(2 * r - 1)) * (z + static_cast<double>(2 * r));
        fact *= static_cast<double>(2 * r + 1) * static_cast<double>(2 * r + 2);
        pw /= nd * nd;
    }
    return {re.value(), im.value()};
}

cplx zeta(cplx z) {
    check_finite_input(z, "zeta");
    int nodes = 20;
    double aim = std::abs(z.imag());
    if (aim > 20.0) nodes = static_cast<int>(std::ceil(aim));
    return zeta_em(z, nodes, 10);
}

}  // namespace cuspsum
