#pragma once

#include <optional>

#include "hyperroot/numeric.hpp"

namespace hyperroot {

// Modified Bessel function of the first kind, I_nu(x), for integer nu >= 0
// and x >= 0, to at least 10 significant digits.  Ascending series up to
// x = 30, large-argument asymptotic expansion beyond; at the switchover the
// two evaluations agree to ~1e-14 relative (checked in the test suite).
// Overflow (x beyond ~709) returns +infinity.
double bessel_i(int nu, double x);

// I_2(x); the kernel of the circle-method main term below.
double bessel_i2(double x);

// Main term of the circle-method expansion for the eta-quotient counting
// function: (2*pi / (n*sqrt(23))) * I_2(4*pi*sqrt(n)/sqrt(23)), which
// estimates p_sigma(n + 1).  Requires n >= 1.
double hrr_main_term(long long n);

// Scale of the first neglected term, n^{-1/2} * I_2(2*pi*sqrt(n)/sqrt(23)):
// a diagnostic for how far the main term can drift, not added to it.
double hrr_error_scale(long long n);

// exp(pi*sqrt(2n/3)) / (4n*sqrt(3)), the classical leading asymptotic of
// the plain partition function p(n).  Requires n >= 1.
double classical_partition_main(long long n);

struct AsymptoticEstimate {
    long long n = 0;       // expansion index; the estimate targets p_sigma(n+1)
    double main_term = 0.0;
    std::optional<Int> exact;              // p_sigma(n+1) when the order permits
    std::optional<double> relative_error;  // |main - exact| / exact
};

// Evaluate the main term at n and, when n + 1 <= series_order, the exact
// coefficient and relative error alongside.
AsymptoticEstimate estimate_p_sigma(long long n, int series_order);

}  // namespace hyperroot
