#include <doctest.h>

#include <vector>

#include "hyperroot/qseries.hpp"

using namespace hyperroot;

namespace {

// Partition counts by the textbook DP over part sizes — no series machinery.
std::vector<Int> partitions_oracle(int N, int colors = 1) {
    std::vector<Int> dp(N + 1);
    dp[0] = 1;
    for (int part = 1; part <= N; ++part)
        for (int rep = 0; rep < colors; ++rep)
            for (int n = part; n <= N; ++n) dp[n] += dp[n - part];
    return dp;
}

std::vector<Int> convolve(const std::vector<Int>& a, const std::vector<Int>& b) {
    std::vector<Int> out(std::min(a.size(), b.size()));
    for (std::size_t i = 0; i < out.size(); ++i)
        for (std::size_t j = 0; i + j < out.size(); ++j)
            if (j < b.size()) out[i + j] += a[i] * b[j];
    return out;
}

}  // namespace

TEST_CASE("series ring basics") {
    PowerSeries phi = phi_series(64);
    PowerSeries inv = phi.inverse();
    CHECK(phi * inv == PowerSeries::one(64));
    CHECK(phi[0] == 1);
    CHECK(phi[1] == -1);
    CHECK(phi[2] == -1);
    CHECK(phi[5] == 1);  // pentagonal exponents 0,1,2,5,7,12,15,...
    CHECK(phi[7] == 1);
    CHECK(phi[12] == -1);
    CHECK(phi[3] == 0);
    CHECK_THROWS_AS(PowerSeries::monomial(1, 2, 8).inverse(), DomainError);
    CHECK_THROWS_AS(PowerSeries::monomial(1, 1, 8).shift_down(2), IntegralityError);
    CHECK_THROWS_AS(PowerSeries::monomial(0, 3, 8).divide_exact(2), IntegralityError);
    CHECK(PowerSeries::monomial(2, 6, 8).divide_exact(3)[2] == 2);
    CHECK(PowerSeries::monomial(1, 1, 8).substitute_qk(3)[3] == 1);
}

TEST_CASE("partition numbers against the DP oracle") {
    auto oracle = partitions_oracle(120);
    PowerSeries p = colored_partitions(1, 120);
    for (int n = 0; n <= 120; ++n) CHECK(p[n] == oracle[n]);
    CHECK(p[4] == 5);
    CHECK(p[10] == 42);
    CHECK(p[11] == 56);
    CHECK(p[26] == 2436);
    CHECK(p[29] == 4565);
    CHECK(p[41] == 44583);
    CHECK(p[100] == 190569292);
}

TEST_CASE("colored partitions against the convolution oracle") {
    auto p = partitions_oracle(40);
    auto p8 = partitions_oracle(40, 8);
    PowerSeries s8 = colored_partitions(8, 40);
    for (int n = 0; n <= 40; ++n) CHECK(s8[n] == p8[n]);
    CHECK(s8[4] == 726);

    // 8-fold plain convolution as a second independent path.
    std::vector<Int> conv = p;
    for (int i = 1; i < 8; ++i) conv = convolve(conv, p);
    for (int n = 0; n <= 40; ++n) CHECK(s8[n] == conv[n]);

    CHECK(colored_partitions(24, 8)[1] == 24);
    CHECK(colored_partitions(2, 11).coeffs() ==
          std::vector<Int>{1, 2, 5, 10, 20, 36, 65, 110, 185, 300, 481, 752});
}

TEST_CASE("colored partitions multiply and grow monotonically") {
    for (auto [l1, l2] : {std::pair{1, 1}, {2, 3}, {8, 16}}) {
        PowerSeries lhs = colored_partitions(l1 + l2, 32);
        PowerSeries rhs = colored_partitions(l1, 32) * colored_partitions(l2, 32);
        CHECK(lhs == rhs);
    }
    for (int l = 1; l < 6; ++l) {
        PowerSeries a = colored_partitions(l, 24), b = colored_partitions(l + 1, 24);
        for (int n = 1; n <= 24; ++n) {
            CHECK(a[n] <= b[n]);                    // more colors, more partitions
            if (n > 1) CHECK(a[n - 1] <= a[n]);     // nondecreasing in n
        }
    }
}

TEST_CASE("xi series") {
    PowerSeries xi = xi_series(40);
    CHECK(xi[0] == 0);
    CHECK(xi[1] == 0);
    CHECK(xi[2] == 1);
    CHECK(xi[6] == 727);  // = p^(8)(4) + 1
    CHECK(xi[6] == colored_partitions(8, 8)[4] + 1);

    // Product-expansion oracle: phi(q^2)/phi(q^4) = prod (1 - q^{4m-2}),
    // multiplied out term by term against the 8-colored partition DP.
    auto p8 = partitions_oracle(40, 8);
    std::vector<Int> prod(41);
    prod[0] = 1;
    for (int m = 2; m <= 40; m += 4) {
        std::vector<Int> next = prod;
        for (int n = m; n <= 40; ++n) next[n] -= prod[n - m];
        prod = std::move(next);
    }
    std::vector<Int> bracket(41);
    bracket[0] = 0;
    for (int n = 1; n <= 40; ++n) bracket[n] = -prod[n];
    auto expect = convolve(p8, bracket);
    for (int n = 0; n <= 20; ++n) CHECK(xi[n] == expect[n]);
    for (int n = 21; n <= 40; ++n) CHECK(xi[n] == expect[n]);
}

TEST_CASE("level-2 multiplicity series") {
    PowerSeries ff = ff_level2_series(60);
    PowerSeries p = colored_partitions(1, 60);
    for (int n = 0; n <= 19; ++n) CHECK(ff[n] == p[n]);
    CHECK(ff[11] == 56);          // M(10), the height-16 level-2 root value
    CHECK(ff[20] == p[20] - 1);   // first defect, from the -q^20 term
    CHECK(ff[22] == p[22] - p[2] + 1);
    for (int n = 0; n <= 60; ++n) CHECK(ff[n] >= 0);
}

TEST_CASE("eta-quotient coefficient series") {
    PowerSeries ps = p_sigma_series(64);
    PowerSeries p = colored_partitions(1, 64);
    for (int n = 0; n <= 22; ++n) CHECK(ps[n] == p[n]);
    for (int n = 23; n <= 64; ++n) CHECK(ps[n] > p[n]);
    CHECK(ps[11] == 56);
    CHECK(ps[21] == 792);
    CHECK(ps[26] == 2439);
    CHECK(ps[26] == p[26] + p[3]);
    CHECK(ps[29] == 4576);
    CHECK(ps[41] == 44968);

    // Direct convolution oracle for 1/(phi(q) phi(q^23)).
    auto pn = partitions_oracle(64);
    std::vector<Int> expect(65);
    for (int m = 0; 23 * m <= 64; ++m)
        for (int n = 0; n + 23 * m <= 64; ++n) expect[n + 23 * m] += pn[n] * pn[m];
    for (int n = 0; n <= 64; ++n) CHECK(ps[n] == expect[n]);
}

TEST_CASE("tau coefficients") {
    PowerSeries tau = tau_series(30);
    CHECK(tau[1] == 1);
    CHECK(tau[2] == -24);
    CHECK(tau[3] == 252);
    CHECK(tau[4] == -1472);
    CHECK(tau[5] == 4830);
    CHECK(tau[6] == tau[2] * tau[3]);  // multiplicativity at 6 = 2*3
    CHECK(tau[10] == tau[2] * tau[5]);
    CHECK(tau[0] == 0);
}
