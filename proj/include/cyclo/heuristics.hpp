#pragma once

// Density model for primes among the psi_m, and the totient-ratio sums.

#include "cyclo/witnesses.hpp"

#include <cstdint>
#include <string_view>

namespace cyclo {

// e^gamma * ln(m) / (phi(m) * ln 2). DomainError for m < 2.
double density(std::uint64_t m);

enum class IndexSet { All, Exclude4Mod8 };
std::string_view to_string(IndexSet s);

struct DensityReport {
    unsigned k = 0;
    double sum = 0;
    IndexSet index_set = IndexSet::Exclude4Mod8;
    double predicted_c_ratio = 0;  // sum / k^2
};

// Sum of density(m) over 2 <= m <= 2^k, optionally skipping m = 4 (mod 8).
// Requires 1 <= k <= 20.
DensityReport density_sum(unsigned k, bool exclude_4_mod_8 = true);

struct ConstantC {
    double value = 0;
    double lower = 0;
    double upper = 0;
    double zeta3_lower = 0;
    double zeta3_upper = 0;
    std::uint64_t zeta3_terms = 0;
};

// (5/12) e^gamma zeta(2) zeta(3) / zeta(6) * ln 2, with zeta(3) bracketed by
// a partial sum and integral tail bounds.
ConstantC constant_c();

struct RatioSum {
    double value = 0;
    double upper_bound = 0;  // rigorous: every rounding directed upward
};

// Sum over n <= z of (n / phi(n))^2.
RatioSum phi_ratio_sum(std::uint64_t z);

// (j/phi(j))^2 == sum over squarefree d | j of h(d), with h multiplicative and
// h(p) = (2p - 1)/(p - 1)^2. Exact rational arithmetic.
bool h_identity_check(std::uint64_t j);

// #{n <= z : phi(n)/n <= delta}, compared exactly. Requires 0 < delta <= 1.
std::uint64_t small_totient_count(std::uint64_t z, Rational delta);

// count < 4.5 * delta^2 * z, decided in integers.
bool small_totient_bound_holds(std::uint64_t count, std::uint64_t z, Rational delta);

}  // namespace cyclo
