#include "cyclo/ntheory.hpp"

#include "cyclo/errors.hpp"

#include <algorithm>
#include <atomic>
#include <cctype>
#include <cmath>
#include <numeric>
#include <string>

namespace cyclo {

double log2_of(const BigNat& v) {
    if (sgn(v) <= 0) throw DomainError("log2_of: argument must be positive");
    long exp = 0;
    double mant = mpz_get_d_2exp(&exp, v.get_mpz_t());
    return std::log2(mant) + static_cast<double>(exp);
}

BigNat parse_decimal(const std::string& s) {
    if (s.empty() || !std::all_of(s.begin(), s.end(), [](unsigned char c) { return std::isdigit(c); }))
        throw DomainError("not a nonnegative decimal integer: '" + s + "'");
    return BigNat(s, 10);
}

PrimeTable sieve_primes(std::uint64_t limit, std::size_t memory_ceiling) {
    if (limit < 2) throw DomainError("sieve_primes: limit must be >= 2");
    // bitmap + ~limit/ln(limit) 8-byte entries, with headroom
    double lim = static_cast<double>(limit);
    double estimate = lim / 8.0 + 8.0 * 1.3 * lim / std::log(std::max(lim, 3.0));
    if (estimate > static_cast<double>(memory_ceiling))
        throw ResourceError("sieve_primes: limit " + std::to_string(limit) +
                            " exceeds memory ceiling of " + std::to_string(memory_ceiling) +
                            " bytes");
    PrimeTable t;
    t.limit_ = limit;
    t.composite_.assign(limit + 1, false);
    t.composite_[0] = t.composite_[1] = true;
    for (std::uint64_t i = 2; i * i <= limit; ++i)
        if (!t.composite_[i])
            for (std::uint64_t j = i * i; j <= limit; j += i) t.composite_[j] = true;
    for (std::uint64_t i = 2; i <= limit; ++i)
        if (!t.composite_[i]) t.primes_.push_back(i);
    return t;
}

std::uint64_t mulmod_u64(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
    return static_cast<std::uint64_t>(static_cast<unsigned __int128>(a) * b % m);
}

std::uint64_t powmod_u64(std::uint64_t base, std::uint64_t exp, std::uint64_t m) {
    if (m == 1) return 0;
    std::uint64_t r = 1;
    base %= m;
    while (exp) {
        if (exp & 1) r = mulmod_u64(r, base, m);
        base = mulmod_u64(base, base, m);
        exp >>= 1;
    }
    return r;
}

bool is_prime_u64(std::uint64_t n) {
    if (n < 2) return false;
    for (std::uint64_t p : {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37}) {
        if (n % p == 0) return n == p;
    }
    std::uint64_t d = n - 1;
    int s = 0;
    while ((d & 1) == 0) {
        d >>= 1;
        ++s;
    }
    // These twelve bases are deterministic below 3.3e24.
    for (std::uint64_t a : {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37}) {
        std::uint64_t x = powmod_u64(a, d, n);
        if (x == 1 || x == n - 1) continue;
        bool composite = true;
        for (int r = 1; r < s; ++r) {
            x = mulmod_u64(x, x, n);
            if (x == n - 1) {
                composite = false;
                break;
            }
        }
        if (composite) return false;
    }
    return true;
}

namespace {

std::atomic<std::uint64_t> g_rho_seed{kDefaultRhoSeed};

// Brent's variant of Pollard rho. Returns a nontrivial factor of the odd
// composite n.
std::uint64_t rho_factor(std::uint64_t n, std::uint64_t seed) {
    std::uint64_t state = seed;
    auto next = [&state]() {
        // splitmix64
        std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    };
    for (;;) {
        std::uint64_t c = next() % (n - 1) + 1;
        std::uint64_t y = next() % n;
        std::uint64_t g = 1, q = 1, x = 0, ys = 0;
        const std::uint64_t block = 128;
        auto f = [&](std::uint64_t v) {
            const std::uint64_t s = mulmod_u64(v, v, n);
            return s >= n - c ? s - (n - c) : s + c;  // no wraparound near 2^64
        };
        for (std::uint64_t r = 1; g == 1; r <<= 1) {
            x = y;
            for (std::uint64_t i = 0; i < r; ++i) y = f(y);
            for (std::uint64_t k = 0; k < r && g == 1; k += block) {
                ys = y;
                for (std::uint64_t i = 0; i < std::min(block, r - k); ++i) {
                    y = f(y);
                    q = mulmod_u64(q, x > y ? x - y : y - x, n);
                }
                g = std::gcd(q, n);
            }
        }
        if (g == n) {
            do {
                ys = f(ys);
                g = std::gcd(x > ys ? x - ys : ys - x, n);
            } while (g == 1);
        }
        if (g != n) return g;
    }
}

void factor_into(std::uint64_t n, std::uint64_t seed, std::vector<std::uint64_t>& out) {
    if (n == 1) return;
    if (is_prime_u64(n)) {
        out.push_back(n);
        return;
    }
    std::uint64_t d = rho_factor(n, seed);
    factor_into(d, seed + 1, out);
    factor_into(n / d, seed + 2, out);
}

}  // namespace

std::uint64_t rho_seed() { return g_rho_seed.load(std::memory_order_relaxed); }
void set_rho_seed(std::uint64_t seed) { g_rho_seed.store(seed, std::memory_order_relaxed); }

FactorMultiset factorize(std::uint64_t n, std::uint64_t seed) {
    if (n == 0) throw DomainError("factorize: n must be >= 1");
    std::vector<std::uint64_t> primes;
    for (std::uint64_t p = 2; p < (1u << 16) && p * p <= n; p += (p == 2 ? 1 : 2)) {
        while (n % p == 0) {
            primes.push_back(p);
            n /= p;
        }
    }
    if (n > 1) factor_into(n, seed, primes);
    std::sort(primes.begin(), primes.end());
    FactorMultiset result;
    for (std::uint64_t p : primes) {
        if (!result.empty() && result.back().prime == p)
            ++result.back().exponent;
        else
            result.push_back({p, 1});
    }
    return result;
}

std::uint64_t largest_prime_factor(std::uint64_t n) {
    auto f = factorize(n);
    return f.empty() ? 1 : f.back().prime;
}

int mobius(std::uint64_t m) {
    int sign = 1;
    for (const auto& pe : factorize(m)) {
        if (pe.exponent > 1) return 0;
        sign = -sign;
    }
    return sign;
}

std::uint64_t euler_phi(std::uint64_t m) {
    std::uint64_t r = m;
    for (const auto& pe : factorize(m)) r = r / pe.prime * (pe.prime - 1);
    return r;
}

std::vector<std::uint64_t> divisors(std::uint64_t m) {
    std::vector<std::uint64_t> ds{1};
    for (const auto& pe : factorize(m)) {
        std::size_t base = ds.size();
        std::uint64_t pk = 1;
        for (unsigned e = 1; e <= pe.exponent; ++e) {
            pk *= pe.prime;
            for (std::size_t i = 0; i < base; ++i) ds.push_back(ds[i] * pk);
        }
    }
    std::sort(ds.begin(), ds.end());
    return ds;
}

std::uint64_t radical(std::uint64_t n) {
    std::uint64_t r = 1;
    for (const auto& pe : factorize(n)) r *= pe.prime;
    return r;
}

std::vector<std::uint32_t> totient_table(std::uint32_t limit) {
    std::vector<std::uint32_t> phi(static_cast<std::size_t>(limit) + 1);
    std::iota(phi.begin(), phi.end(), 0u);
    for (std::uint32_t p = 2; p <= limit; ++p) {
        if (phi[p] != p) continue;
        for (std::uint64_t j = p; j <= limit; j += p) phi[j] -= phi[j] / p;
    }
    return phi;
}

BigNat modpow(const BigNat& base, const BigNat& exponent, const BigNat& modulus) {
    if (cmp(modulus, 2) < 0) throw DomainError("modpow: modulus must be >= 2");
    if (sgn(exponent) < 0) throw DomainError("modpow: exponent must be nonnegative");
    BigNat r;
    mpz_powm(r.get_mpz_t(), base.get_mpz_t(), exponent.get_mpz_t(), modulus.get_mpz_t());
    return r;
}

int jacobi(const BigNat& a, const BigNat& n) {
    if (cmp(n, 3) < 0 || mpz_even_p(n.get_mpz_t()))
        throw DomainError("jacobi: modulus must be odd and >= 3");
    return mpz_jacobi(a.get_mpz_t(), n.get_mpz_t());
}

int jacobi(long a, const BigNat& n) { return jacobi(BigNat(a), n); }

std::uint64_t multiplicative_order(std::uint64_t p, std::uint64_t seed) {
    if (p == 2 || !is_prime_u64(p))
        throw DomainError("multiplicative_order: " + std::to_string(p) + " is not an odd prime");
    std::uint64_t order = p - 1;
    for (const auto& pe : factorize(p - 1, seed)) {
        for (unsigned e = 0; e < pe.exponent; ++e) {
            if (powmod_u64(2, order / pe.prime, p) != 1) break;
            order /= pe.prime;
        }
    }
    return order;
}

std::uint64_t multiplicative_order(std::uint64_t p) { return multiplicative_order(p, rho_seed()); }

std::uint64_t OrderContext::order(std::uint64_t p) {
    {
        std::lock_guard lock(mu_);
        if (auto it = cache_.find(p); it != cache_.end()) return it->second;
    }
    std::uint64_t ord = multiplicative_order(p, seed_);
    std::lock_guard lock(mu_);
    cache_.emplace(p, ord);
    return ord;
}

}  // namespace cyclo
