#include "cuspsum/qseries.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <numeric>

#include "cuspsum/kernels.hpp"

namespace cuspsum {

namespace {

constexpr double kEps = 2.220446049250313e-16;  // 2^-52

// -2k/B_k for k = 4, 6, 8, 10, 14, from B_4 = -1/30, B_6 = 1/42,
// B_8 = -1/30, B_10 = 5/66, B_14 = 7/6.  All integers at these weights.
long eisenstein_factor(int k) {
    switch (k) {
        case 4: return 240;
        case 6: return -504;
        case 8: return 480;
        case 10: return -264;
        case 14: return -24;
        default: throw unsupported_error("eisenstein: weight must be one of 4,6,8,10,14");
    }
}

void check_trunc(std::int64_t have_f, std::int64_t have_g, std::int64_t want) {
    if (want < 1) throw domain_error("multiply: N must be >= 1");
    if (have_f < want || have_g < want)
        throw domain_error("multiply: truncation mismatch (factor shorter than requested N)");
}

// ---- float FFT convolution (iterative radix-2) ----

void fft_inplace(std::vector<std::complex<double>>& a, bool inverse) {
    const std::size_t n = a.size();
    for (std::size_t i = 1, j = 0; i < n; ++i) {
        std::size_t bit = n >> 1;
        for (; j & bit; bit >>= 1) j ^= bit;
        j ^= bit;
        if (i < j) std::swap(a[i], a[j]);
    }
    for (std::size_t len = 2; len <= n; len <<= 1) {
        const double ang = (inverse ? -2.0 : 2.0) * M_PI / static_cast<double>(len);
        const std::complex<double> wl(std::cos(ang), std::sin(ang));
        for (std::size_t i = 0; i < n; i += len) {
            std::complex<double> w(1.0, 0.0);
            for (std::size_t j2 = 0; j2 < len / 2; ++j2) {
                std::complex<double> u = a[i + j2];
                std::complex<double> v = a[i + j2 + len / 2] * w;
                a[i + j2] = u + v;
                a[i + j2 + len / 2] = u - v;
                w *= wl;
            }
        }
    }
    if (inverse)
        for (auto& x : a) x /= static_cast<double>(n);
}

// Convolution of two real sequences via one forward FFT (packing g into the
// imaginary part), truncated to out_len entries.
std::vector<double> fft_convolve(const std::vector<double>& f, const std::vector<double>& g,
                                 std::size_t out_len, double* roundoff_rel) {
    std::size_t need = f.size() + g.size() - 1;
    std::size_t sz = 1;
    while (sz < need) sz <<= 1;
    std::vector<std::complex<double>> z(sz);
    for (std::size_t i = 0; i < f.size(); ++i) z[i].real(f[i]);
    for (std::size_t i = 0; i < g.size(); ++i) z[i].imag(g[i]);
    fft_inplace(z, false);
    // spectra: F = (Z + conj(Z~))/2, G = (Z - conj(Z~))/(2i); product FG.
    std::vector<std::complex<double>> prod(sz);
    for (std::size_t i = 0; i < sz; ++i) {
        std::size_t j = (sz - i) & (sz - 1);
        std::complex<double> zi = z[i], zj = std::conj(z[j]);
        std::complex<double> F = 0.5 * (zi + zj);
        std::complex<double> G = std::complex<double>(0.0, -0.5) * (zi - zj);
        prod[i] = F * G;
    }
    fft_inplace(prod, true);
    std::vector<double> out(out_len);
    for (std::size_t i = 0; i < out_len && i < sz; ++i) out[i] = prod[i].real();

    if (roundoff_rel) {
        double mf = 0.0, mg = 0.0, mo = 0.0;
        for (double v : f) mf = std::max(mf, std::abs(v));
        for (double v : g) mg = std::max(mg, std::abs(v));
        for (double v : out) mo = std::max(mo, std::abs(v));
        double bits = std::log2(static_cast<double>(sz));
        *roundoff_rel = 8.0 * bits * kEps * mf * mg / std::max(1.0, mo);
    }
    return out;
}

// sigma_{k-1} sieves.
std::vector<double> sigma_sieve_float(int km1, std::int64_t N) {
    std::vector<double> s(static_cast<std::size_t>(N) + 1, 0.0);
    for (std::int64_t d = 1; d <= N; ++d) {
        double pw = std::pow(static_cast<double>(d), km1);
        for (std::int64_t m = d; m <= N; m += d) s[static_cast<std::size_t>(m)] += pw;
    }
    return s;
}

std::vector<mpz_class> sigma_sieve_exact(int km1, std::int64_t N) {
    std::vector<mpz_class> s(static_cast<std::size_t>(N) + 1, mpz_class(0));
    mpz_class pw;
    for (std::int64_t d = 1; d <= N; ++d) {
        mpz_ui_pow_ui(pw.get_mpz_t(), static_cast<unsigned long>(d),
                      static_cast<unsigned long>(km1));
        for (std::int64_t m = d; m <= N; m += d) s[static_cast<std::size_t>(m)] += pw;
    }
    return s;
}

}  // namespace

const mpz_class& QExpansion::az(std::int64_t n) const {
    static const mpz_class zero(0);
    if (!exact) throw domain_error("QExpansion: exact coefficients not available");
    if (n < 1 || n > n_max) return zero;
    return zcoeffs[static_cast<std::size_t>(n)];
}

SparseSeries eta_cubed(std::int64_t N) {
    if (N < 1) throw domain_error("eta_cubed: N must be >= 1");
    SparseSeries p;
    for (std::int64_t j = 0;; ++j) {
        std::int64_t e = j * (j + 1) / 2;
        if (e > N) break;
        long c = static_cast<long>(2 * j + 1);
        p.terms.emplace_back(e, (j % 2 == 0) ? c : -c);
    }
    return p;
}

QExpansion delta_qexp(std::int64_t N, bool exact) {
    if (N < 1) throw domain_error("delta_qexp: N must be >= 1");
    if (exact && N > kExactNMax)
        throw resource_limit_error("delta_qexp: exact path capped at N = 1e5");

    // Delta = q * P^8 with P = eta^3; coefficients of P^8 up to exponent N-1.
    const std::int64_t M = N - 1;
    SparseSeries P = eta_cubed(std::max<std::int64_t>(M, 1));

    QExpansion out;
    out.weight = 12;
    out.n_max = N;
    out.form_id = "delta";
    out.coeffs.assign(static_cast<std::size_t>(N) + 1, 0.0);

    if (!exact) {
        std::vector<double> acc(static_cast<std::size_t>(M) + 1, 0.0),
            nxt(static_cast<std::size_t>(M) + 1, 0.0);
        for (auto [e, c] : P.terms)
            if (e <= M) acc[static_cast<std::size_t>(e)] = static_cast<double>(c);
        for (int step = 0; step < 7; ++step) {
            std::fill(nxt.begin(), nxt.end(), 0.0);
            for (auto [e, c] : P.terms) {
                if (e > M) break;
                kern::axpy(nxt.data() + e, acc.data(), static_cast<std::size_t>(M + 1 - e),
                           static_cast<double>(c));
            }
            acc.swap(nxt);
        }
        for (std::int64_t n = 1; n <= N; ++n)
            out.coeffs[static_cast<std::size_t>(n)] = acc[static_cast<std::size_t>(n - 1)];
        out.roundoff = 7.0 * static_cast<double>(N) * kEps;
        return out;
    }

    std::vector<mpz_class> acc(static_cast<std::size_t>(M) + 1, mpz_class(0)),
        nxt(static_cast<std::size_t>(M) + 1, mpz_class(0));
    for (auto [e, c] : P.terms)
        if (e <= M) acc[static_cast<std::size_t>(e)] = c;
    for (int step = 0; step < 7; ++step) {
        for (auto& v : nxt) v = 0;
        for (auto [e, c] : P.terms) {
            if (e > M) break;
            const unsigned long uc = static_cast<unsigned long>(c < 0 ? -c : c);
            mpz_class* dst = nxt.data() + e;
            const mpz_class* src = acc.data();
            const std::size_t len = static_cast<std::size_t>(M + 1 - e);
            if (c >= 0)
                for (std::size_t i = 0; i < len; ++i)
                    mpz_addmul_ui(dst[i].get_mpz_t(), src[i].get_mpz_t(), uc);
            else
                for (std::size_t i = 0; i < len; ++i)
                    mpz_submul_ui(dst[i].get_mpz_t(), src[i].get_mpz_t(), uc);
        }
        acc.swap(nxt);
    }
    out.exact = true;
    out.zcoeffs.assign(static_cast<std::size_t>(N) + 1, mpz_class(0));
    for (std::int64_t n = 1; n <= N; ++n) {
        out.zcoeffs[static_cast<std::size_t>(n)] = acc[static_cast<std::size_t>(n - 1)];
        out.coeffs[static_cast<std::size_t>(n)] =
            out.zcoeffs[static_cast<std::size_t>(n)].get_d();
    }
    out.roundoff = kEps;  // float view is a rounding of exact values
    return out;
}

QExpansion eisenstein(int k, std::int64_t N, bool exact) {
    const long fac = eisenstein_factor(k);
    if (N < 1) throw domain_error("eisenstein: N must be >= 1");
    if (exact && N > kExactNMax)
        throw resource_limit_error("eisenstein: exact path capped at N = 1e5");

    QExpansion out;
    out.weight = k;
    out.n_max = N;
    out.form_id = "E" + std::to_string(k);
    out.a0 = 1.0;
    out.coeffs.assign(static_cast<std::size_t>(N) + 1, 0.0);
    if (!exact) {
        auto sig = sigma_sieve_float(k - 1, N);
        for (std::int64_t n = 1; n <= N; ++n)
            out.coeffs[static_cast<std::size_t>(n)] =
                static_cast<double>(fac) * sig[static_cast<std::size_t>(n)];
        return out;
    }
    auto sig = sigma_sieve_exact(k - 1, N);
    out.exact = true;
    out.za0 = 1;
    out.zcoeffs.assign(static_cast<std::size_t>(N) + 1, mpz_class(0));
    for (std::int64_t n = 1; n <= N; ++n) {
        out.zcoeffs[static_cast<std::size_t>(n)] = fac * sig[static_cast<std::size_t>(n)];
        out.coeffs[static_cast<std::size_t>(n)] =
            out.zcoeffs[static_cast<std::size_t>(n)].get_d();
    }
    return out;
}

QExpansion eigenform(int k, std::int64_t N, bool exact) {
    switch (k) {
        case 12: return delta_qexp(N, exact);
        case 16:
        case 18:
        case 20:
        case 22:
        case 26: break;
        default:
            throw unsupported_error(
                "eigenform: weight must be one of 12,16,18,20,22,26 (one-dimensional spaces)");
    }
    QExpansion d = delta_qexp(N, exact);
    QExpansion e = eisenstein(k - 12, N, exact);
    // Direct product: FFT would wreck the small-n coefficients here (the
    // dynamic range across n is ~n^{5.5}), and eigenforms are consumed at
    // modest N.
    QExpansion out = multiply(d, e, N, MulMethod::direct);
    out.form_id = "delta*E" + std::to_string(k - 12);
    return out;
}

QExpansion multiply(const SparseSeries& f, const QExpansion& g, std::int64_t N) {
    std::int64_t f_max = f.terms.empty() ? 0 : f.terms.back().first;
    // A sparse factor is taken as complete up to any N >= its last exponent
    // only if generated that far; callers pass eta_cubed(N).
    check_trunc(std::max(f_max, N), g.n_max, N);
    QExpansion out;
    out.weight = g.weight;
    out.n_max = N;
    out.form_id = "sparse*" + g.form_id;
    out.coeffs.assign(static_cast<std::size_t>(N) + 1, 0.0);
    // g has support on 0..N via (a0, coeffs); dst[n] = sum_e c_e * g[n-e].
    std::vector<double> gfull(static_cast<std::size_t>(N) + 1);
    gfull[0] = g.a0;
    for (std::int64_t n = 1; n <= N; ++n) gfull[static_cast<std::size_t>(n)] = g.a(n);
    for (auto [e, c] : f.terms) {
        if (e > N) break;
        kern::axpy(out.coeffs.data() + e, gfull.data(), static_cast<std::size_t>(N + 1 - e),
                   static_cast<double>(c));
    }
    out.a0 = out.coeffs[0];
    out.coeffs[0] = 0.0;
    out.roundoff = g.roundoff + static_cast<double>(N) * kEps;
    return out;
}

QExpansion multiply(const QExpansion& f, const QExpansion& g, std::int64_t N, MulMethod method) {
    check_trunc(f.n_max, g.n_max, N);
    QExpansion out;
    out.weight = f.weight + g.weight;
    out.n_max = N;
    out.form_id = f.form_id + "*" + g.form_id;
    out.coeffs.assign(static_cast<std::size_t>(N) + 1, 0.0);
    out.a0 = f.a0 * g.a0;

    if (method == MulMethod::automatic) method = (N <= 30000) ? MulMethod::direct : MulMethod::fft;

    const bool do_exact = f.exact && g.exact && N <= kExactNMax;
    if (do_exact) {
        // Exact dense*dense; the float view is rounded from it.
        std::vector<mpz_class> zf(static_cast<std::size_t>(N) + 1), zg(zf), zo(zf);
        zf[0] = f.za0;
        zg[0] = g.za0;
        for (std::int64_t n = 1; n <= N; ++n) {
            zf[static_cast<std::size_t>(n)] = f.az(n);
            zg[static_cast<std::size_t>(n)] = g.az(n);
        }
        for (std::int64_t i = 0; i <= N; ++i) {
            if (zf[static_cast<std::size_t>(i)] == 0) continue;
            for (std::int64_t j = 0; i + j <= N; ++j)
                mpz_addmul(zo[static_cast<std::size_t>(i + j)].get_mpz_t(),
                           zf[static_cast<std::size_t>(i)].get_mpz_t(),
                           zg[static_cast<std::size_t>(j)].get_mpz_t());
        }
        out.exact = true;
        out.za0 = zo[0];
        out.zcoeffs.assign(static_cast<std::size_t>(N) + 1, mpz_class(0));
        for (std::int64_t n = 1; n <= N; ++n) {
            out.zcoeffs[static_cast<std::size_t>(n)] = zo[static_cast<std::size_t>(n)];
            out.coeffs[static_cast<std::size_t>(n)] =
                zo[static_cast<std::size_t>(n)].get_d();
        }
        out.roundoff = kEps;
        return out;
    }

    std::vector<double> ff(static_cast<std::size_t>(N) + 1), gg(ff);
    ff[0] = f.a0;
    gg[0] = g.a0;
    for (std::int64_t n = 1; n <= N; ++n) {
        ff[static_cast<std::size_t>(n)] = f.a(n);
        gg[static_cast<std::size_t>(n)] = g.a(n);
    }
    if (method == MulMethod::direct) {
        for (std::int64_t i = 0; i <= N; ++i) {
            if (ff[static_cast<std::size_t>(i)] == 0.0) continue;
            kern::axpy(out.coeffs.data() + i, gg.data(), static_cast<std::size_t>(N + 1 - i),
                       ff[static_cast<std::size_t>(i)]);
        }
        out.a0 = out.coeffs[0];
        out.coeffs[0] = 0.0;
        out.roundoff = f.roundoff + g.roundoff + static_cast<double>(N) * kEps;
        return out;
    }
    double fft_err = 0.0;
    auto conv = fft_convolve(ff, gg, static_cast<std::size_t>(N) + 1, &fft_err);
    out.a0 = conv[0];
    for (std::int64_t n = 1; n <= N; ++n)
        out.coeffs[static_cast<std::size_t>(n)] = conv[static_cast<std::size_t>(n)];
    out.roundoff = f.roundoff + g.roundoff + fft_err;
    return out;
}

HeckeReport hecke_verify(const QExpansion& f, int k, std::int64_t bound) {
    if (!f.exact || f.n_max < bound)
        throw domain_error("hecke_verify: exact coefficients required up to bound");
    HeckeReport rep;

    // multiplicativity on coprime pairs 2 <= m < n, m*n <= bound
    for (std::int64_t m = 2; m * m <= bound; ++m) {
        for (std::int64_t n = m + 1; m * n <= bound; ++n) {
            if (std::gcd(m, n) != 1) continue;
            ++rep.relations_checked;
            if (f.az(m) * f.az(n) != f.az(m * n))
                rep.violations.push_back({HeckeViolation::Kind::multiplicative, m, n});
        }
    }

    // prime-power recursion a(p) a(p^r) = a(p^{r+1}) + p^{k-1} a(p^{r-1})
    std::vector<bool> is_comp(static_cast<std::size_t>(bound) + 1, false);
    for (std::int64_t p = 2; p <= bound; ++p) {
        if (is_comp[static_cast<std::size_t>(p)]) continue;
        for (std::int64_t q = p * p; q <= bound; q += p) is_comp[static_cast<std::size_t>(q)] = true;
        mpz_class pk;
        mpz_ui_pow_ui(pk.get_mpz_t(), static_cast<unsigned long>(p),
                      static_cast<unsigned long>(k - 1));
        std::int64_t pr = p;  // p^r, r >= 1
        while (pr <= bound / p) {
            ++rep.relations_checked;
            mpz_class lhs = f.az(p) * f.az(pr);
            mpz_class rhs = f.az(pr * p) + pk * f.az(pr / p);
            if (lhs != rhs)
                rep.violations.push_back({HeckeViolation::Kind::prime_power, p, pr});
            pr *= p;
        }
    }
    return rep;
}

}  // namespace cuspsum
