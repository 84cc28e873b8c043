#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <string>

namespace hyperroot {

using Int = mpz_class;  // arbitrary-precision integer
using Rat = mpq_class;  // arbitrary-precision rational

// gmpxx has no long long constructor; build from 32-bit halves.
inline Int make_int(long long v) {
    unsigned long long u = v < 0 ? -static_cast<unsigned long long>(v) : v;
    Int r = static_cast<unsigned long>(u >> 32);
    r <<= 32;
    r += static_cast<unsigned long>(u & 0xffffffffull);
    return v < 0 ? Int(-r) : r;
}

inline Rat make_rat(long long v) { return Rat(make_int(v)); }

// Exact conversion back to long long; throws if out of range.
long long to_ll(const Int& v);

inline Int factorial(unsigned long n) {
    Int r;
    mpz_fac_ui(r.get_mpz_t(), n);
    return r;
}

inline Int binomial(const Int& n, unsigned long k) {
    Int r;
    mpz_bin_ui(r.get_mpz_t(), n.get_mpz_t(), k);
    return r;
}

inline Int pow_ui(const Int& base, unsigned long e) {
    Int r;
    mpz_pow_ui(r.get_mpz_t(), base.get_mpz_t(), e);
    return r;
}

// True iff q has denominator 1.
inline bool is_integral(const Rat& q) {
    return mpz_cmp_ui(mpq_denref(q.get_mpq_t()), 1) == 0;
}

inline Int numerator(const Rat& q) { return Int(mpq_numref(q.get_mpq_t())); }

// Moebius function for small arguments (trial division).
int moebius(long long n);

// 64-bit FNV-1a, used for content hashes of matrices.
struct Fnv1a {
    std::uint64_t state = 14695981039346656037ull;
    void feed(const void* data, std::size_t len);
    void feed(long long v) { feed(&v, sizeof(v)); }
    std::string hex() const;
};

}  // namespace hyperroot
