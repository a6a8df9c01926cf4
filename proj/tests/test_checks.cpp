#include "cyclo/checks.hpp"
#include "cyclo/errors.hpp"

#include <doctest.h>

using namespace cyclo;

TEST_SUITE("checks") {

TEST_CASE("individual suites pass at small limits") {
    CHECK(check_product_identity(500).passed);
    CHECK(check_size_bounds(500).passed);
    for (const auto& r : check_aurifeuillian(500)) CHECK_MESSAGE(r.passed, r.name);
    CHECK(check_pairwise_coprime(80).passed);
    CHECK(check_bang(500).passed);
    CHECK(check_base2_blindness(256, {}).passed);
    CHECK(check_h_identity(300).passed);
    CHECK(check_sophie_germain(1000).passed);
}

TEST_CASE("failures are reported with examples") {
    const auto r = check_split_magnitude(700, 2.0);
    CHECK_FALSE(r.passed);
    CHECK(r.detail.find("m=60;") != std::string::npos);
    CHECK(check_split_magnitude(700, kDefaultSplitMagnitudeSlack).passed);
    // psi_7 = 127 is prime, so nothing rejects it and the check must flag it.
    const auto prime = check_base2_blindness_for({7});
    CHECK_FALSE(prime.passed);
    CHECK(prime.detail.find("m=7") != std::string::npos);
}

TEST_CASE("suite dispatch") {
    CheckParams p;
    p.limit = 200;
    const auto report = run_check_suite("identities", p);
    REQUIRE(report.results.size() == 1);
    CHECK(report.passed());
    CHECK_THROWS_AS(run_check_suite("unknown", p), DomainError);
    p.z = 1000;
    CHECK(run_check_suite("small-totient", p).results.size() == 4);
}

}
