#pragma once

// Cyclotomic values phi_m = Phi_m(2), the intrinsic prime delta_m, the
// primitive part psi_m = phi_m / delta_m, and the Aurifeuillian split of
// phi_m for m = 8k + 4.

#include "cyclo/bignat.hpp"

#include <cstdint>
#include <optional>
#include <utility>

namespace cyclo {

struct AurifeuillianSplit {
    BigNat phi_plus;
    BigNat phi_minus;
    BigNat psi_plus;
    BigNat psi_minus;
};

struct CyclotomicRecord {
    std::uint64_t m = 0;
    BigNat phi;
    std::uint64_t delta = 1;
    BigNat psi;
    std::optional<AurifeuillianSplit> split;  // iff m = 4 (mod 8)
};

// Phi_m(2) via the Moebius product over divisors with an exact final division.
// Throws InvariantViolation if the division leaves a remainder.
BigNat phi_value(std::uint64_t m);

// delta_m: the largest prime p of m when p is odd and m = p^j * ord_p(2),
// otherwise 1.
std::uint64_t intrinsic_factor(std::uint64_t m);

// (gcd(phi, 2^(2k+1) + 2^(k+1) + 1), gcd(phi, 2^(2k+1) - 2^(k+1) + 1)) for
// m = 8k + 4. DomainError for other m.
std::pair<BigNat, BigNat> aurifeuillian_split(std::uint64_t m, const BigNat& phi);

// Strips delta_m from whichever Aurifeuillian half it divides.
std::pair<BigNat, BigNat> psi_split(const CyclotomicRecord& record);

CyclotomicRecord cyclotomic_record(std::uint64_t m);

// The two Aurifeuillian multipliers 2^(2k+1) +- 2^(k+1) + 1.
std::pair<BigNat, BigNat> aurifeuillian_multipliers(std::uint64_t k);

// Largest observed deviation for m <= 20000 is about 2.45 bits (m = 660).
inline constexpr double kDefaultSplitMagnitudeSlack = 3.0;

// |log2(half) - phi(m)/2| <= slack for both phi halves. Requires a split.
bool split_magnitude_ok(const CyclotomicRecord& record,
                        double slack = kDefaultSplitMagnitudeSlack);

}  // namespace cyclo
