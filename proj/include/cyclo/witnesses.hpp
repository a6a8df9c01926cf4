#pragma once

// Constructive compositeness witnesses: Sophie-Germain divisors of 2^p - 1,
// buckets of primes by the order of 2, the L_d(x) sets, and a census of
// witnessed composite primitive parts.

#include "cyclo/bignat.hpp"

#include <cstdint>
#include <map>
#include <optional>
#include <vector>

namespace cyclo {

struct SophieGermainChecks {
    std::uint64_t p_mod4 = 0;
    std::uint64_t q_mod8 = 0;
    int jacobi2q = 0;
    bool divides = false;  // 2^p = 1 (mod q)
    bool proper = false;   // q < 2^p - 1
};

struct SophieGermainCertificate {
    std::uint64_t p = 0;
    std::uint64_t q = 0;
    SophieGermainChecks checks;
};

// For prime p = 3 (mod 4), p > 3, q = 2p + 1 prime: certifies q as a proper
// divisor of 2^p - 1. DomainError names the failing precondition.
SophieGermainCertificate sophie_germain_composite(std::uint64_t p);

// All qualifying p <= limit, ascending; empty below 11.
std::vector<SophieGermainCertificate> enumerate_sophie_germain(std::uint64_t limit);

struct OrderBucket {
    std::uint64_t m = 0;
    std::vector<std::uint64_t> witnesses;  // primes p with ord_p(2) = m, ascending
};

using OrderMap = std::map<std::uint64_t, OrderBucket>;

// Buckets every odd prime p <= x by ord_p(2). jobs > 1 splits the prime range
// across threads; the result does not depend on jobs.
OrderMap order_map(std::uint64_t x, unsigned jobs = 1);

struct Rational {
    std::int64_t num = 0;
    std::int64_t den = 1;
    double value() const { return static_cast<double>(num) / static_cast<double>(den); }
};

struct CensusConfig {
    Rational theta{3, 5};
    Rational threshold_factor{5, 1};
    std::optional<std::uint64_t> threshold_override;
};

// threshold_override, or threshold_factor * sqrt(x) * (ln x)^2.
double census_threshold(std::uint64_t x, const CensusConfig& config);

// Primes p in (x/2, x] with p = 3 (mod 4), ord_p(2) = (p-1)/d and
// ord_p(2) > threshold.
std::vector<std::uint64_t> enumerate_L_d(std::uint64_t x, std::uint64_t d,
                                         const CensusConfig& config = {});

enum class CensusSet { C1, C2 };

struct CensusWitness {
    std::uint64_t m = 0;
    std::uint64_t p = 0;  // smallest qualifying prime with ord_p(2) = m
    CensusSet set = CensusSet::C1;
};

struct CensusResult {
    std::uint64_t x = 0;
    double threshold = 0;
    double x_pow_theta = 0;
    std::uint64_t c1_composite_count = 0;
    std::uint64_t c2_not_two_prime_count = 0;
    std::vector<CensusWitness> witnessed;  // ascending m
};

// For each odd prime p <= x with ord_p(2) = m above the threshold:
//  m != 4 (mod 8): m counts in C1 when p < psi_m (so p is a proper divisor);
//  m == 4 (mod 8): m counts in C2 when p is a proper divisor of the psi-half
//  it divides and the other half exceeds 1.
CensusResult composite_census(std::uint64_t x, const CensusConfig& config = {});

}  // namespace cyclo
