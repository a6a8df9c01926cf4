#include "cyclo/cyclotomic.hpp"
#include "cyclo/errors.hpp"
#include "cyclo/primality.hpp"
#include "oracles.hpp"

#include <doctest.h>

#include <algorithm>

using namespace cyclo;

TEST_SUITE("primality") {

TEST_CASE("fermat_test") {
    CHECK(fermat_test(2047, 2));
    CHECK_FALSE(fermat_test(2047, 3));
    CHECK(fermat_test(13, 3));
    CHECK(fermat_test(341, 2));
}

TEST_CASE("strong_probable_prime") {
    CHECK(strong_probable_prime(2047, 2));
    CHECK_FALSE(strong_probable_prime(2047, 3));
    CHECK(strong_probable_prime(65537, 2));
    CHECK(strong_probable_prime(3, 3));
    CHECK(strong_probable_prime(3, 6));
    CHECK_THROWS_AS(strong_probable_prime(10, 2), DomainError);
    CHECK_THROWS_AS(strong_probable_prime(1, 2), DomainError);
}

TEST_CASE("strong_probable_prime never rejects a prime") {
    for (std::uint64_t n = 3; n < 5000; n += 2)
        if (oracle::is_prime(n))
            for (unsigned long b : {2UL, 3UL, 5UL, 7UL}) CHECK(strong_probable_prime(n, b));
}

TEST_CASE("strong_lucas") {
    CHECK_FALSE(strong_lucas(2047));
    CHECK(strong_lucas(127));
    CHECK_FALSE(strong_lucas(323));  // Lucas pseudoprime, not a strong one
    CHECK_THROWS_AS(strong_lucas(49), DomainError);
    CHECK_THROWS_AS(strong_lucas(100), DomainError);
    // 5777 = 53 * 109 is a strong Lucas pseudoprime; the base-2 half catches it.
    CHECK(strong_lucas(5777));
    CHECK_FALSE(strong_probable_prime(5777, 2));
    PipelineConfig cfg;
    cfg.trial_bound = 10;
    CHECK(Classifier(cfg).classify(5777).tag == ClassTag::Composite);
}

TEST_CASE("strong_lucas matches primality on odd non-squares") {
    // Strong Lucas pseudoprimes below 10^5 (Selfridge method A).
    const std::vector<unsigned long> pseudo{5459, 5777, 10877, 16109, 18971, 22499, 24569, 25199, 40309, 58519, 75077, 97439};
    for (unsigned long n = 3; n < 100000; n += 2) {
        if (mpz_perfect_square_p(BigNat(n).get_mpz_t())) continue;
        const bool expected = oracle::is_prime(static_cast<std::uint64_t>(n)) ||
                              std::find(pseudo.begin(), pseudo.end(), n) != pseudo.end();
        if (strong_lucas(n) != expected) FAIL_CHECK("n = " << n);
    }
}

TEST_CASE("is_perfect_power") {
    CHECK(is_perfect_power(8) == std::pair<BigNat, unsigned long>{2, 3});
    CHECK(is_perfect_power(9) == std::pair<BigNat, unsigned long>{3, 2});
    CHECK(is_perfect_power(64) == std::pair<BigNat, unsigned long>{2, 6});
    CHECK_FALSE(is_perfect_power(2047));
    CHECK_FALSE(is_perfect_power(1));
    CHECK(is_perfect_power(pow2(61) * pow2(61) * 9) == std::pair<BigNat, unsigned long>{3 * pow2(61), 2});
}

TEST_CASE("trial_division_primitive") {
    CHECK(trial_division_primitive(2047, 11, 10000) == 23);
    CHECK_FALSE(trial_division_primitive(127, 7, 10000));
    CHECK(trial_division_primitive(phi_value(36), 36, 10000) == 37);
    CHECK(phi_value(36) == 4033);
}

TEST_CASE("classify examples") {
    const Classifier c;
    const auto a = c.classify(2047, 11);
    CHECK(a.tag == ClassTag::Composite);
    REQUIRE(a.witness);
    CHECK(*a.witness == 23);
    CHECK(c.classify(1, 6).tag == ClassTag::Unit);
    CHECK(c.classify(131071, 17).tag == ClassTag::ProvenPrime);
    CHECK(classify(BigNat(2047)).tag == ClassTag::Composite);
}

TEST_CASE("classify pipeline stages") {
    PipelineConfig tiny;
    tiny.trial_bound = 100;
    const Classifier c(tiny);
    // Both factors above the trial bound.
    CHECK(c.classify(BigNat(104723) * BigNat(209441)).tag == ClassTag::Composite);

    const auto big_prime = c.classify(pow2(127) - 1, 127);
    CHECK(big_prime.tag == ClassTag::ProbablePrime);
    CHECK(big_prime.method == method::kExtraBases);

    const auto small_prime = c.classify(BigNat(1000003));
    CHECK(small_prime.tag == ClassTag::ProvenPrime);

    const auto square = c.classify(BigNat(1000003) * BigNat(1000003));
    CHECK(square.tag == ClassTag::Composite);

    // Fermat base 3 rejects psi_11 = 2047 once trial division cannot see 23.
    PipelineConfig none;
    none.trial_bound = 10;
    const auto fermat = Classifier(none).classify(2047);
    CHECK(fermat.tag == ClassTag::Composite);
    CHECK(fermat.method == method::kFermat3);
    CHECK_FALSE(fermat.witness);
}

TEST_CASE("composite witnesses divide n") {
    PipelineConfig cfg;
    cfg.trial_bound = 1000;
    const Classifier c(cfg);
    for (std::uint64_t m = 2; m <= 400; ++m) {
        const auto rec = cyclotomic_record(m);
        const auto r = c.classify(rec.psi, m);
        if (r.witness) {
            CHECK(r.tag == ClassTag::Composite);
            CHECK(*r.witness > 1);
            CHECK(*r.witness < rec.psi);
            CHECK(rec.psi % *r.witness == 0);
        }
    }
}

TEST_CASE("classify agrees with trial division below 10^5") {
    PipelineConfig cfg;
    cfg.trial_bound = 50;
    const Classifier c(cfg);
    for (std::uint64_t n = 1; n < 100000; ++n) {
        const auto t = c.classify(BigNat(n)).tag;
        const ClassTag expected = n == 1 ? ClassTag::Unit
                                  : oracle::is_prime(n) ? ClassTag::ProvenPrime
                                                        : ClassTag::Composite;
        if (t != expected) FAIL_CHECK("n = " << n << " got " << to_string(t));
    }
}

TEST_CASE("class tag strings") {
    for (auto t : {ClassTag::Unit, ClassTag::ProvenPrime, ClassTag::ProbablePrime, ClassTag::Composite})
        CHECK(class_tag_from_string(to_string(t)) == t);
    CHECK_THROWS_AS(class_tag_from_string("prime"), DomainError);
    CHECK(is_prime_tag(ClassTag::ProbablePrime));
    CHECK_FALSE(is_prime_tag(ClassTag::Unit));
}

}
