#pragma once

// Slow, independent reference implementations used as test oracles. None of
// these touch the library under test.

#include <gmpxx.h>

#include <cstdint>
#include <numeric>
#include <vector>

namespace oracle {

inline bool is_prime(std::uint64_t n) {
    if (n < 2) return false;
    for (std::uint64_t d = 2; d * d <= n; ++d)
        if (n % d == 0) return false;
    return true;
}

inline bool is_prime(const mpz_class& n) {
    if (n < 2) return false;
    for (mpz_class d = 2; d * d <= n; ++d)
        if (n % d == 0) return false;
    return true;
}

inline std::uint64_t totient(std::uint64_t n) {
    std::uint64_t c = 0;
    for (std::uint64_t k = 1; k <= n; ++k)
        if (std::gcd(k, n) == 1) ++c;
    return c;
}

inline std::vector<std::uint64_t> divisors(std::uint64_t n) {
    std::vector<std::uint64_t> d;
    for (std::uint64_t k = 1; k <= n; ++k)
        if (n % k == 0) d.push_back(k);
    return d;
}

inline std::uint64_t order_of_two(std::uint64_t p) {
    std::uint64_t v = 2 % p, k = 1;
    while (v != 1) {
        v = v * 2 % p;
        ++k;
    }
    return k;
}

// Integer polynomials, lowest degree first.
using Poly = std::vector<mpz_class>;

// Exact division of a monic-divisor polynomial.
inline Poly divide(Poly num, const Poly& den) {
    Poly q(num.size() - den.size() + 1);
    for (std::size_t i = q.size(); i-- > 0;) {
        q[i] = num[i + den.size() - 1];
        for (std::size_t j = 0; j < den.size(); ++j) num[i + j] -= q[i] * den[j];
    }
    return q;
}

// Phi_1 .. Phi_limit as coefficient vectors, built by repeated division of
// x^m - 1.
inline std::vector<Poly> cyclotomic_polys(std::uint64_t limit) {
    std::vector<Poly> phi(limit + 1);
    for (std::uint64_t m = 1; m <= limit; ++m) {
        Poly p(m + 1, 0);
        p[0] = -1;
        p[m] = 1;
        for (std::uint64_t d = 1; d < m; ++d)
            if (m % d == 0) p = divide(p, phi[d]);
        phi[m] = p;
    }
    return phi;
}

inline mpz_class eval_at_two(const Poly& p) {
    mpz_class v = 0;
    for (std::size_t i = p.size(); i-- > 0;) v = v * 2 + p[i];
    return v;
}

}  // namespace oracle
