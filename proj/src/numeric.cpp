#include "hyperroot/numeric.hpp"

#include "hyperroot/errors.hpp"

namespace hyperroot {

void Fnv1a::feed(const void* data, std::size_t len) {
    const auto* p = static_cast<const unsigned char*>(data);
    for (std::size_t i = 0; i < len; ++i) {
        state ^= p[i];
        state *= 1099511628211ull;
    }
}

std::string Fnv1a::hex() const {
    static const char* digits = "0123456789abcdef";
    std::string s(16, '0');
    std::uint64_t v = state;
    for (int i = 15; i >= 0; --i) {
        s[i] = digits[v & 0xf];
        v >>= 4;
    }
    return s;
}

long long to_ll(const Int& v) {
    if (!v.fits_slong_p()) {
        static_assert(sizeof(long) >= 8, "need 64-bit long for exact conversion");
        throw DomainError("integer out of 64-bit range: " + v.get_str());
    }
    return v.get_si();
}

int moebius(long long n) {
    if (n <= 0) throw DomainError("moebius: argument must be positive");
    int primes = 0;
    for (long long p = 2; p * p <= n; ++p) {
        if (n % p == 0) {
            n /= p;
            if (n % p == 0) return 0;
            ++primes;
        }
    }
    if (n > 1) ++primes;
    return (primes % 2 == 0) ? 1 : -1;
}

}  // namespace hyperroot
