#include "hyperroot/asymptotics.hpp"

#include <cmath>
#include <limits>

#include "hyperroot/errors.hpp"
#include "hyperroot/qseries.hpp"

namespace hyperroot {

namespace {

constexpr double kSeriesCut = 30.0;  // ascending series below, asymptotic above

// Sum_{m>=0} (x/2)^{2m+nu} / (m! (m+nu)!).  All terms are positive, so no
// cancellation; converges fast for x <= kSeriesCut.
double bessel_ascending(int nu, double x) {
    double half = x / 2.0;
    // leading term (x/2)^nu / nu!
    double term = 1.0;
    for (int k = 1; k <= nu; ++k) term *= half / k;
    double sum = term;
    for (int m = 1; m < 400; ++m) {
        term *= half * half / (static_cast<double>(m) * (m + nu));
        sum += term;
        if (term < sum * 1e-18) break;
    }
    return sum;
}

// e^x/sqrt(2 pi x) * sum_k (-1)^k prod_{j<=k}(mu - (2j-1)^2) / (k! (8x)^k),
// mu = 4 nu^2, truncated at the smallest term.  For x >= kSeriesCut the
// smallest term is far below double precision, so the truncation error is
// negligible.
double bessel_asymptotic(int nu, double x) {
    double mu = 4.0 * nu * nu;
    double sum = 1.0;
    double term = 1.0;
    double prev = std::numeric_limits<double>::max();
    for (int k = 1; k < 60; ++k) {
        double odd = 2.0 * k - 1.0;
        term *= -(mu - odd * odd) / (8.0 * x * k);
        if (std::abs(term) >= prev) break;  // divergent tail reached
        sum += term;
        prev = std::abs(term);
        if (prev < 1e-18) break;
    }
    return std::exp(x) / std::sqrt(2.0 * M_PI * x) * sum;
}

}  // namespace

double bessel_i(int nu, double x) {
    if (nu < 0) throw DomainError("bessel_i needs nu >= 0");
    if (x < 0) throw DomainError("bessel_i needs x >= 0");
    if (x == 0.0) return nu == 0 ? 1.0 : 0.0;
    return x <= kSeriesCut ? bessel_ascending(nu, x) : bessel_asymptotic(nu, x);
}

double bessel_i2(double x) { return bessel_i(2, x); }

double hrr_main_term(long long n) {
    if (n < 1) throw DomainError("main term needs n >= 1");
    double root23 = std::sqrt(23.0);
    double arg = 4.0 * M_PI * std::sqrt(static_cast<double>(n)) / root23;
    return 2.0 * M_PI / (static_cast<double>(n) * root23) * bessel_i2(arg);
}

double hrr_error_scale(long long n) {
    if (n < 1) throw DomainError("error scale needs n >= 1");
    double arg = 2.0 * M_PI * std::sqrt(static_cast<double>(n)) / std::sqrt(23.0);
    return bessel_i2(arg) / std::sqrt(static_cast<double>(n));
}

double classical_partition_main(long long n) {
    if (n < 1) throw DomainError("classical estimate needs n >= 1");
    double nn = static_cast<double>(n);
    return std::exp(M_PI * std::sqrt(2.0 * nn / 3.0)) / (4.0 * nn * std::sqrt(3.0));
}

AsymptoticEstimate estimate_p_sigma(long long n, int series_order) {
    AsymptoticEstimate est;
    est.n = n;
    est.main_term = hrr_main_term(n);
    if (n + 1 <= series_order) {
        PowerSeries ps = p_sigma_series(series_order);
        est.exact = ps[static_cast<int>(n + 1)];
        double exact_d = est.exact->get_d();
        est.relative_error = std::abs(est.main_term - exact_d) / exact_d;
    }
    return est;
}

}  // namespace hyperroot
