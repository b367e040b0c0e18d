// number_theory.hpp
// Classical helpers for the factoring driver: modular exponentiation,
// prime/prime-power detection, continued-fraction convergents, and order
// recovery from a known multiple. Desk scale (trial division is fine).

#pragma once

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdint>
#include <numeric>
#include <stdexcept>
#include <vector>

namespace qsim {

inline std::int64_t modpow(std::int64_t base, std::int64_t exponent, std::int64_t modulus) {
    if (modulus <= 0) throw std::invalid_argument("modpow: modulus must be positive");
    if (exponent < 0) throw std::invalid_argument("modpow: negative exponent");
    unsigned __int128 result = 1;
    unsigned __int128 b = static_cast<unsigned __int128>(((base % modulus) + modulus) % modulus);
    std::uint64_t e = static_cast<std::uint64_t>(exponent);
    const unsigned __int128 m = static_cast<unsigned __int128>(modulus);
    while (e > 0) {
        if (e & 1) result = result * b % m;
        b = b * b % m;
        e >>= 1;
    }
    return static_cast<std::int64_t>(result);
}

inline bool is_prime(std::int64_t n) {
    if (n < 2) return false;
    if (n % 2 == 0) return n == 2;
    for (std::int64_t d = 3; d * d <= n; d += 2) {
        if (n % d == 0) return false;
    }
    return true;
}

// Largest integer r with r^k <= n.
inline std::int64_t integer_kth_root(std::int64_t n, unsigned k) {
    if (n < 0 || k == 0) throw std::invalid_argument("integer_kth_root: bad arguments");
    std::int64_t r = static_cast<std::int64_t>(std::pow(static_cast<double>(n), 1.0 / k));
    auto pow_le = [n, k](std::int64_t v) {
        unsigned __int128 acc = 1;
        for (unsigned i = 0; i < k; ++i) {
            acc *= static_cast<unsigned __int128>(v);
            if (acc > static_cast<unsigned __int128>(n)) return false;
        }
        return true;
    };
    while (r > 1 && !pow_le(r)) --r;
    while (pow_le(r + 1)) ++r;
    return r;
}

// p when n = p^k for a prime p and k >= 2, otherwise 0.
inline std::int64_t prime_power_base(std::int64_t n) {
    if (n < 4) return 0;
    const unsigned max_k = static_cast<unsigned>(std::bit_width(static_cast<std::uint64_t>(n)));
    for (unsigned k = 2; k <= max_k; ++k) {
        const std::int64_t r = integer_kth_root(n, k);
        if (r < 2) break;
        unsigned __int128 acc = 1;
        for (unsigned i = 0; i < k; ++i) acc *= static_cast<unsigned __int128>(r);
        if (acc == static_cast<unsigned __int128>(n) && is_prime(r)) return r;
    }
    return 0;
}

inline bool is_prime_or_prime_power(std::int64_t n) {
    return is_prime(n) || prime_power_base(n) != 0;
}

// Denominators of the continued-fraction convergents of num/den, ascending,
// truncated at the first denominator above the bound.
inline std::vector<std::int64_t> convergent_denominators(std::int64_t num, std::int64_t den,
                                                         std::int64_t bound) {
    if (den <= 0 || num < 0) throw std::invalid_argument("convergent_denominators: bad fraction");
    std::vector<std::int64_t> result;
    // Denominator recurrence k_i = a_i * k_{i-1} + k_{i-2}, seeded k_{-2} = 1,
    // k_{-1} = 0, with the a_i read off the Euclidean division chain.
    std::int64_t k_m2 = 1, k_m1 = 0;
    std::int64_t a = num, b = den;
    while (b != 0) {
        const std::int64_t coeff = a / b;
        const std::int64_t k = coeff * k_m1 + k_m2;
        if (k > bound) break;
        result.push_back(k);
        k_m2 = k_m1;
        k_m1 = k;
        const std::int64_t r = a % b;
        a = b;
        b = r;
    }
    result.erase(std::unique(result.begin(), result.end()), result.end());
    return result;
}

// Smallest divisor d of the multiple with a^d = 1 (mod m); this is the exact
// multiplicative order whenever a^multiple = 1. Returns 0 if it is not.
inline std::int64_t order_from_multiple(std::int64_t a, std::int64_t multiple, std::int64_t m) {
    if (multiple <= 0 || modpow(a, multiple, m) != 1) return 0;
    std::vector<std::int64_t> divisors;
    for (std::int64_t d = 1; d * d <= multiple; ++d) {
        if (multiple % d != 0) continue;
        divisors.push_back(d);
        divisors.push_back(multiple / d);
    }
    std::sort(divisors.begin(), divisors.end());
    for (std::int64_t d : divisors) {
        if (modpow(a, d, m) == 1) return d;
    }
    return multiple;  // unreachable: multiple itself qualifies
}

}  // namespace qsim
