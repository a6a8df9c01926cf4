#pragma once

// Invariant suites over the library: cyclotomic identities and bounds,
// Aurifeuillian splits, pairwise coprimality, base-2 blindness, and the
// totient-ratio inequalities. Each suite reports per-check pass/fail.

#include "cyclo/cyclotomic.hpp"
#include "cyclo/primality.hpp"

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace cyclo {

struct CheckResult {
    std::string name;
    bool passed = false;
    std::string detail;
};

struct CheckReport {
    std::string suite;
    std::vector<CheckResult> results;
    bool passed() const;
};

struct CheckParams {
    std::uint64_t limit = 0;  // 0 selects the suite's default
    std::uint64_t z = 0;      // phi-ratio / small-totient; 0 selects defaults
    double magnitude_slack = kDefaultSplitMagnitudeSlack;
    PipelineConfig config;
};

// identities, bounds, aurifeuille, magnitude, coprimality, bang, pseudoprime,
// phi-ratio, small-totient, h-identity, sophie, all
const std::vector<std::string_view>& check_suite_names();

// DomainError for an unknown suite.
CheckReport run_check_suite(std::string_view suite, const CheckParams& params = {});

// Individual suites.
CheckResult check_product_identity(std::uint64_t limit);
CheckResult check_size_bounds(std::uint64_t limit);
std::vector<CheckResult> check_aurifeuillian(std::uint64_t limit);
CheckResult check_split_magnitude(std::uint64_t limit, double slack);
CheckResult check_pairwise_coprime(std::uint64_t limit);
CheckResult check_bang(std::uint64_t limit);
CheckResult check_base2_blindness(std::uint64_t limit, const PipelineConfig& config);
// Same property for an explicit list of m whose psi_m is known composite.
CheckResult check_base2_blindness_for(const std::vector<std::uint64_t>& composite_ms);
std::vector<CheckResult> check_phi_ratio(const std::vector<std::uint64_t>& zs);
std::vector<CheckResult> check_small_totient(const std::vector<std::uint64_t>& zs);
CheckResult check_h_identity(std::uint64_t limit);
CheckResult check_sophie_germain(std::uint64_t limit);

}  // namespace cyclo
