#pragma once

// Layered primality classification for cyclotomic-scale integers:
// trial division (optionally restricted to primitive candidates 1 + t*m),
// a base-3 Fermat prefilter, then the two halves of Baillie-PSW.

#include "cyclo/bignat.hpp"
#include "cyclo/ntheory.hpp"

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace cyclo {

enum class ClassTag { Unit, ProvenPrime, ProbablePrime, Composite };

std::string_view to_string(ClassTag tag);
ClassTag class_tag_from_string(std::string_view s);  // DomainError on unknown

inline bool is_prime_tag(ClassTag t) {
    return t == ClassTag::ProvenPrime || t == ClassTag::ProbablePrime;
}

// Names of the stage that decided a classification.
namespace method {
inline constexpr std::string_view kUnit = "unit";
inline constexpr std::string_view kTrialDivision = "trial-division";
inline constexpr std::string_view kFermat3 = "fermat-3";
inline constexpr std::string_view kPerfectSquare = "perfect-square";
inline constexpr std::string_view kStrongBase2 = "strong-base-2";
inline constexpr std::string_view kStrongLucas = "strong-lucas";
inline constexpr std::string_view kDeterministicBases = "deterministic-bases";
inline constexpr std::string_view kExtraBases = "extra-bases";
}  // namespace method

struct Classification {
    ClassTag tag = ClassTag::Composite;
    std::optional<BigNat> witness;  // 1 < witness < n, Composite only
    std::string method;
};

struct PipelineConfig {
    std::uint64_t trial_bound = std::uint64_t{1} << 20;
    std::vector<unsigned long> mr_extra_bases{3, 5, 7};
    BigNat proven_threshold = pow2(64);
};

// base^n == base (mod n). Requires n >= 2.
bool fermat_test(const BigNat& n, unsigned long base);

// Miller-Rabin round. DomainError for even n or n < 3. A base that is a
// multiple of n passes vacuously.
bool strong_probable_prime(const BigNat& n, unsigned long base);

// Strong Lucas test with Selfridge's method A parameters (first D in
// 5, -7, 9, -11, ... with (D/n) = -1; P = 1; Q = (1 - D)/4).
// DomainError for even n, n < 3, or perfect squares.
bool strong_lucas(const BigNat& n);

// Smallest base b with n = b^e, e >= 2. None for n = 1 and non-powers.
std::optional<std::pair<BigNat, unsigned long>> is_perfect_power(const BigNat& n);

// First prime c = 1 + t*m (t >= 1, c <= bound, c < n) dividing n.
std::optional<std::uint64_t> trial_division_primitive(const BigNat& n, std::uint64_t m,
                                                      std::uint64_t bound);

// Holds the trial-division sieve for a config so repeated classification
// does not re-sieve. Immutable after construction; share freely.
class Classifier {
public:
    explicit Classifier(PipelineConfig config = {});

    Classification classify(const BigNat& n, std::optional<std::uint64_t> m_context = {}) const;

    std::optional<std::uint64_t> primitive_factor(const BigNat& n, std::uint64_t m) const;

    const PipelineConfig& config() const noexcept { return config_; }

private:
    std::optional<std::uint64_t> small_factor(const BigNat& n, std::uint64_t limit) const;

    PipelineConfig config_;
    std::shared_ptr<const PrimeTable> table_;
};

Classification classify(const BigNat& n, std::optional<std::uint64_t> m_context = {},
                        const PipelineConfig& config = {});

}  // namespace cyclo
