#include "hyperroot/qseries.hpp"

#include <algorithm>

namespace hyperroot {

PowerSeries PowerSeries::monomial(int k, const Int& coeff, int order) {
    PowerSeries s(order);
    if (k < 0) throw DomainError("monomial exponent must be >= 0");
    if (k <= order) s.c_[k] = coeff;
    return s;
}

PowerSeries PowerSeries::operator+(const PowerSeries& o) const {
    PowerSeries r(std::min(order(), o.order()));
    for (int n = 0; n <= r.order(); ++n) r.c_[n] = c_[n] + o.c_[n];
    return r;
}

PowerSeries PowerSeries::operator-(const PowerSeries& o) const {
    PowerSeries r(std::min(order(), o.order()));
    for (int n = 0; n <= r.order(); ++n) r.c_[n] = c_[n] - o.c_[n];
    return r;
}

PowerSeries PowerSeries::operator*(const PowerSeries& o) const {
    PowerSeries r(std::min(order(), o.order()));
    for (int i = 0; i <= r.order(); ++i) {
        if (c_[i] == 0) continue;
        for (int j = 0; i + j <= r.order(); ++j) {
            if (o.c_[j] == 0) continue;
            r.c_[i + j] += c_[i] * o.c_[j];
        }
    }
    return r;
}

PowerSeries PowerSeries::inverse() const {
    if (c_[0] != 1 && c_[0] != -1)
        throw DomainError("series inverse requires constant term +1 or -1");
    PowerSeries r(order());
    r.c_[0] = c_[0];  // 1/(+-1)
    for (int n = 1; n <= order(); ++n) {
        Int acc = 0;
        for (int k = 1; k <= n; ++k) acc += c_[k] * r.c_[n - k];
        r.c_[n] = -c_[0] * acc;
    }
    return r;
}

PowerSeries PowerSeries::pow(unsigned long e) const {
    PowerSeries base = *this, r = PowerSeries::one(order());
    while (e > 0) {
        if (e & 1) r = r * base;
        e >>= 1;
        if (e) base = base * base;
    }
    return r;
}

PowerSeries PowerSeries::substitute_qk(int k) const {
    if (k < 1) throw DomainError("substitute_qk: k must be >= 1");
    PowerSeries r(order());
    for (int n = 0; n <= order(); ++n) {
        if (c_[n] == 0) continue;
        if (n > order() / k) break;
        r.c_[n * k] = c_[n];
    }
    return r;
}

PowerSeries PowerSeries::shift_up(int k) const {
    if (k < 0) throw DomainError("shift_up: negative shift");
    PowerSeries r(order());
    for (int n = 0; n + k <= order(); ++n) r.c_[n + k] = c_[n];
    return r;
}

PowerSeries PowerSeries::shift_down(int k) const {
    if (k < 0) throw DomainError("shift_down: negative shift");
    for (int n = 0; n < k && n <= order(); ++n)
        if (c_[n] != 0)
            throw IntegralityError("shift_down: nonzero coefficient below q^" + std::to_string(k));
    PowerSeries r(order());
    for (int n = k; n <= order(); ++n) r.c_[n - k] = c_[n];
    // top k coefficients are unknown after the shift; keep them zero but
    // remember the effective order shrank
    return r;
}

PowerSeries PowerSeries::divide_exact(const Int& m) const {
    if (m == 0) throw DomainError("divide_exact by zero");
    PowerSeries r(order());
    for (int n = 0; n <= order(); ++n) {
        Int q, rem;
        mpz_tdiv_qr(q.get_mpz_t(), rem.get_mpz_t(), c_[n].get_mpz_t(), m.get_mpz_t());
        if (rem != 0)
            throw IntegralityError("divide_exact: coefficient of q^" + std::to_string(n) +
                                   " not divisible by " + m.get_str());
        r.c_[n] = q;
    }
    return r;
}

PowerSeries phi_series(int order) {
    PowerSeries s(order);
    // Generalized pentagonal numbers k(3k-1)/2, k = 0, 1, -1, 2, -2, ...
    for (long long k = 0;; ++k) {
        long long g1 = k * (3 * k - 1) / 2, g2 = k * (3 * k + 1) / 2;
        if (g1 > order && g2 > order) break;
        Int sign = (k % 2 == 0) ? 1 : -1;
        if (g1 <= order) s.at(static_cast<int>(g1)) += sign;
        if (k > 0 && g2 <= order) s.at(static_cast<int>(g2)) += sign;
    }
    return s;
}

PowerSeries colored_partitions(int colors, int order) {
    if (colors < 1) throw DomainError("colored_partitions: need at least one color");
    return phi_series(order).inverse().pow(static_cast<unsigned long>(colors));
}

PowerSeries xi_series(int order) {
    PowerSeries phi2 = phi_series(order).substitute_qk(2);
    PowerSeries phi4 = phi_series(order).substitute_qk(4);
    PowerSeries bracket = PowerSeries::one(order) - phi2 * phi4.inverse();
    return colored_partitions(8, order) * bracket;
}

namespace {

// prod_{j>=1} (1 + sign * q^{step*j - offset}) truncated.
PowerSeries sparse_product(int order, int step, int offset, int sign) {
    PowerSeries r = PowerSeries::one(order);
    for (int e = step - offset; e <= order; e += step) {
        PowerSeries factor = PowerSeries::one(order);
        factor.at(e) = sign;
        r = r * factor;
    }
    return r;
}

}  // namespace

PowerSeries ff_level2_series(int order) {
    int work = order + 3;  // room for the q^{-3} prefactor
    PowerSeries p = phi_series(work).inverse();
    PowerSeries even = sparse_product(work, 4, 2, -1);        // prod (1 - q^{4j-2})
    PowerSeries odd_plus = sparse_product(work, 2, 1, 1);     // prod (1 + q^{2j-1})
    PowerSeries odd_minus = sparse_product(work, 2, 1, -1);   // prod (1 - q^{2j-1})
    PowerSeries tail = odd_plus - odd_minus - PowerSeries::monomial(1, 2, work);
    PowerSeries full = p * even * tail;
    PowerSeries result(order);
    {
        PowerSeries shifted = full.shift_down(3).divide_exact(2);
        for (int n = 0; n <= order; ++n) result.at(n) = shifted[n];
    }
    // The product collapses against 1/phi: result * phi must open with
    // 1 - q^20 + q^22 - q^24 + q^26 - 2q^28 + ...
    PowerSeries check = result * phi_series(order);
    static const std::pair<int, int> leading[] = {{0, 1},  {20, -1}, {22, 1},
                                                  {24, -1}, {26, 1},  {28, -2}};
    for (int n = 0; n <= std::min(order, 28); ++n) {
        Int expected = 0;
        for (auto [e, v] : leading)
            if (e == n) expected = v;
        if (check[n] != expected)
            throw IntegralityError("level-2 series self-check failed at q^" + std::to_string(n));
    }
    return result;
}

PowerSeries p_sigma_series(int order) {
    PowerSeries phi = phi_series(order);
    PowerSeries s = (phi * phi.substitute_qk(23)).inverse();
    // Independent path: the product form (1 + q^23 + 2q^46 + ...) P(q), i.e.
    // the two inverses multiplied out separately.
    PowerSeries alt = phi.inverse() * phi.substitute_qk(23).inverse();
    if (!(alt == s)) throw IntegralityError("eta-quotient self-check failed");
    return s;
}

PowerSeries tau_series(int order) {
    if (order < 1) throw DomainError("tau_series: order must be >= 1");
    return phi_series(order).pow(24).shift_up(1);
}

}  // namespace hyperroot
