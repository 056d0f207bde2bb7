#pragma once

// q-expansions of level-1 forms.  Delta comes from the Jacobi triple product
// for eta^3 raised to the 8th power (7 dense*sparse multiplies, O(N^{3/2})).
// The one-dimensional cusp spaces k in {12,16,18,20,22,26} are generated as
// Delta * E_{k-12}.  A float path (doubles, default) and an exact path
// (GMP integers, capped at n <= 1e5 by policy) are kept side by side.

#include <gmpxx.h>

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "cuspsum/errors.hpp"

namespace cuspsum {

inline constexpr std::int64_t kExactNMax = 100000;

// Integer series with O(sqrt N) support (the eta^3 triple product).
struct SparseSeries {
    std::vector<std::pair<std::int64_t, long>> terms;  // (exponent, coeff), exponents increasing
};

struct QExpansion {
    int weight = 0;
    std::int64_t n_max = 0;
    std::string form_id;
    double a0 = 0.0;  // constant term, kept apart so products track cusp-form status
    std::vector<double> coeffs;  // coeffs[n] = a(n); index 0 unused
    double roundoff = 0.0;       // accumulated convolution roundoff estimate (relative)
    bool exact = false;
    mpz_class za0;
    std::vector<mpz_class> zcoeffs;  // exact a(n) when exact == true

    double a(std::int64_t n) const {
        return (n >= 1 && n <= n_max) ? coeffs[static_cast<std::size_t>(n)] : 0.0;
    }
    const mpz_class& az(std::int64_t n) const;
};

// P(q) = sum_{j>=0} (-1)^j (2j+1) q^{j(j+1)/2}, truncated at exponent N.
SparseSeries eta_cubed(std::int64_t N);

QExpansion delta_qexp(std::int64_t N, bool exact = false);

// E_k = 1 - (2k/B_k) sum sigma_{k-1}(n) q^n for k in {4,6,8,10,14}.
QExpansion eisenstein(int k, std::int64_t N, bool exact = false);

// Normalized Hecke eigenform of weight k in {12,16,18,20,22,26}.
QExpansion eigenform(int k, std::int64_t N, bool exact = false);

enum class MulMethod { automatic, direct, fft };

// Truncated Cauchy products.  Both factors must extend to N.
QExpansion multiply(const SparseSeries& f, const QExpansion& g, std::int64_t N);
QExpansion multiply(const QExpansion& f, const QExpansion& g, std::int64_t N,
                    MulMethod method = MulMethod::automatic);

struct HeckeViolation {
    enum class Kind { multiplicative, prime_power };
    Kind kind;
    std::int64_t m, n;  // a(m)a(n) != a(mn), or (p, p^r) for the recursion check
};

struct HeckeReport {
    std::vector<HeckeViolation> violations;
    std::int64_t relations_checked = 0;
};

// Exact check of a(m)a(n) = a(mn) for coprime mn <= bound and
// a(p)a(p^r) = a(p^{r+1}) + p^{k-1} a(p^{r-1}) for prime powers <= bound.
HeckeReport hecke_verify(const QExpansion& f, int k, std::int64_t bound);

}  // namespace cuspsum
