#pragma once

#include <vector>

#include "hyperroot/errors.hpp"
#include "hyperroot/numeric.hpp"

namespace hyperroot {

// Truncated integer power series: coefficients of q^0 .. q^order, exact.
// All ring operations truncate at the common order; mixing orders takes the
// smaller one.  Values are immutable once built (builders mutate privately).
class PowerSeries {
  public:
    explicit PowerSeries(int order) : c_(order + 1) {
        if (order < 0) throw DomainError("series order must be >= 0");
    }
    static PowerSeries one(int order) {
        PowerSeries s(order);
        s.c_[0] = 1;
        return s;
    }
    static PowerSeries monomial(int k, const Int& coeff, int order);

    int order() const { return static_cast<int>(c_.size()) - 1; }
    const Int& operator[](int n) const { return c_.at(n); }
    const std::vector<Int>& coeffs() const { return c_; }
    Int& at(int n) { return c_.at(n); }

    PowerSeries operator+(const PowerSeries& o) const;
    PowerSeries operator-(const PowerSeries& o) const;
    PowerSeries operator*(const PowerSeries& o) const;
    bool operator==(const PowerSeries& o) const { return c_ == o.c_; }

    // Multiplicative inverse; requires constant term +1 or -1 so the result
    // stays integral.
    PowerSeries inverse() const;
    PowerSeries pow(unsigned long e) const;
    PowerSeries substitute_qk(int k) const;  // q -> q^k
    PowerSeries shift_up(int k) const;       // multiply by q^k

    // Divide by q^k: the k lowest coefficients must vanish.
    PowerSeries shift_down(int k) const;
    // Divide every coefficient by the integer m exactly.
    PowerSeries divide_exact(const Int& m) const;

  private:
    std::vector<Int> c_;
};

// Euler function phi(q) = prod (1 - q^n), via the pentagonal-number theorem.
PowerSeries phi_series(int order);

// 1 / phi(q)^colors: partitions into `colors`-colored parts.
PowerSeries colored_partitions(int colors, int order);

// Level-2 multiplicity defect series for the rank-10 even unimodular case:
// xi = phi^{-8} (1 - phi(q^2)/phi(q^4)).
PowerSeries xi_series(int order);

// Level-2 root multiplicities of the rank-3 algebra: coefficient of q^n is
// M(n-1), from (q^{-3}/2) P(q) prod(1-q^{4j-2}) [prod(1+q^{2j-1}) -
// prod(1-q^{2j-1}) - 2q].  Self-checks the leading structure of the result.
PowerSeries ff_level2_series(int order);

// 1 / (phi(q) phi(q^23)): Fourier coefficients of the eta quotient
// 1/(eta(z) eta(23 z)) with the q^{1/24} q^{23/24} prefactor cancelled.
PowerSeries p_sigma_series(int order);

// Ramanujan tau: q phi(q)^24, coefficients tau(1)..tau(order).
PowerSeries tau_series(int order);

inline constexpr int kDefaultSeriesOrder = 256;

}  // namespace hyperroot
