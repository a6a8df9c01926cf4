#pragma once

// Machine-word number theory: sieving, factorization, arithmetic functions,
// modular arithmetic and the multiplicative order of 2.

#include "cyclo/bignat.hpp"

#include <cstdint>
#include <mutex>
#include <unordered_map>
#include <utility>
#include <vector>

namespace cyclo {

struct PrimePower {
    std::uint64_t prime;
    unsigned exponent;
    friend bool operator==(const PrimePower&, const PrimePower&) = default;
};

// Prime factorization with strictly increasing primes.
using FactorMultiset = std::vector<PrimePower>;

inline constexpr std::size_t kDefaultSieveMemoryCeiling = std::size_t{1} << 28;

// All primes <= limit, plus an O(1) membership bitmap.
class PrimeTable {
public:
    std::uint64_t limit() const noexcept { return limit_; }
    const std::vector<std::uint64_t>& primes() const noexcept { return primes_; }
    bool contains(std::uint64_t n) const noexcept {
        return n <= limit_ && n >= 2 && composite_.size() > n && !composite_[n];
    }

private:
    friend PrimeTable sieve_primes(std::uint64_t, std::size_t);
    std::uint64_t limit_ = 0;
    std::vector<std::uint64_t> primes_;
    std::vector<bool> composite_;
};

// Throws DomainError for limit < 2, ResourceError when the estimated footprint
// exceeds memory_ceiling bytes.
PrimeTable sieve_primes(std::uint64_t limit,
                        std::size_t memory_ceiling = kDefaultSieveMemoryCeiling);

// Deterministic for all 64-bit n.
bool is_prime_u64(std::uint64_t n);

inline constexpr std::uint64_t kDefaultRhoSeed = 0x9e3779b97f4a7c15ULL;

// Process-wide seed used when factorize is called without one. The seed only
// changes how factors are found, never the factorization.
std::uint64_t rho_seed();
void set_rho_seed(std::uint64_t seed);

// Trial division below 2^16, then Brent's rho with a seeded polynomial.
FactorMultiset factorize(std::uint64_t n, std::uint64_t seed = rho_seed());

std::uint64_t largest_prime_factor(std::uint64_t n);  // P+(1) = 1
int mobius(std::uint64_t m);
std::uint64_t euler_phi(std::uint64_t m);
std::vector<std::uint64_t> divisors(std::uint64_t m);
std::uint64_t radical(std::uint64_t n);

// Totients of 0..limit in one pass.
std::vector<std::uint32_t> totient_table(std::uint32_t limit);

std::uint64_t mulmod_u64(std::uint64_t a, std::uint64_t b, std::uint64_t m);
std::uint64_t powmod_u64(std::uint64_t base, std::uint64_t exp, std::uint64_t m);

// base^exponent mod modulus. Throws DomainError when modulus < 2.
BigNat modpow(const BigNat& base, const BigNat& exponent, const BigNat& modulus);

// Jacobi symbol (a/n) for odd n >= 3; DomainError otherwise.
int jacobi(const BigNat& a, const BigNat& n);
int jacobi(long a, const BigNat& n);

// Multiplicative order of 2 modulo an odd prime p. DomainError if p = 2 or p
// is not prime.
std::uint64_t multiplicative_order(std::uint64_t p);

// Memoizing wrapper; safe to share between threads.
class OrderContext {
public:
    explicit OrderContext(std::uint64_t seed = rho_seed()) : seed_(seed) {}
    std::uint64_t order(std::uint64_t p);

private:
    std::uint64_t seed_;
    std::mutex mu_;
    std::unordered_map<std::uint64_t, std::uint64_t> cache_;
};

std::uint64_t multiplicative_order(std::uint64_t p, std::uint64_t seed);

}  // namespace cyclo
