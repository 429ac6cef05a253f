#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <cstdint>
#include <stdexcept>
#include <string>

namespace pgx {

// Arbitrary-precision integer. Group orders reach p^28 and SNF intermediates
// can blow up well past 64 bits, so everything order-sized uses Int.
using Int = boost::multiprecision::cpp_int;

// Exponent entry of a normal-form word; bounded by the relative orders
// (at most p^4 in practice).
using Exp = std::int64_t;

class pgx_error : public std::runtime_error {
public:
    explicit pgx_error(const std::string& msg) : std::runtime_error(msg) {}
};

// Raised when a p-quotient run exceeds its generator budget or deadline.
class budget_error : public pgx_error {
public:
    explicit budget_error(const std::string& msg) : pgx_error(msg) {}
};

inline Int int_pow(Int base, unsigned e) {
    Int r = 1;
    while (e--) r *= base;
    return r;
}

// v_p(n) together with a check that n is a power of p.
inline unsigned p_valuation(Int n, const Int& p) {
    unsigned v = 0;
    while (n > 1) {
        if (n % p != 0)
            throw pgx_error("p_valuation: " + n.str() + " is not a power of " + p.str());
        n /= p;
        ++v;
    }
    return v;
}

inline Exp mod_floor(Exp a, Exp m) {
    Exp r = a % m;
    return r < 0 ? r + m : r;
}

inline long long mod_pow_ll(long long b, long long e, long long m) {
    long long r = 1 % m;
    b %= m;
    if (b < 0) b += m;
    while (e > 0) {
        if (e & 1) r = (__int128)r * b % m;
        b = (__int128)b * b % m;
        e >>= 1;
    }
    return r;
}

// Inverse of a mod m (m need not be prime; a must be a unit).
inline long long mod_inverse(long long a, long long m) {
    long long t = 0, new_t = 1, r = m, new_r = mod_floor(a, m);
    while (new_r != 0) {
        long long q = r / new_r;
        t -= q * new_t; std::swap(t, new_t);
        r -= q * new_r; std::swap(r, new_r);
    }
    if (r != 1)
        throw pgx_error("mod_inverse: " + std::to_string(a) + " is not invertible mod " + std::to_string(m));
    return mod_floor(t, m);
}

inline bool is_prime_ll(long long n) {
    if (n < 2) return false;
    for (long long d = 2; d * d <= n; ++d)
        if (n % d == 0) return false;
    return true;
}

} // namespace pgx
