#include "cyclo/witnesses.hpp"

#include "cyclo/cyclotomic.hpp"
#include "cyclo/errors.hpp"
#include "cyclo/ntheory.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <thread>

namespace cyclo {

SophieGermainCertificate sophie_germain_composite(std::uint64_t p) {
    auto fail = [p](const std::string& why) {
        return DomainError("sophie_germain_composite(" + std::to_string(p) + "): " + why);
    };
    if (!is_prime_u64(p)) throw fail("p is not prime");
    if (p % 4 != 3) throw fail("p is not 3 mod 4");
    if (p <= 3) throw fail("p must exceed 3 (q = 2p + 1 would equal 2^p - 1)");
    if (p > (std::uint64_t{1} << 62)) throw fail("p too large");
    const std::uint64_t q = 2 * p + 1;
    if (!is_prime_u64(q)) throw fail("q = 2p + 1 is not prime");

    SophieGermainCertificate cert{p, q, {}};
    cert.checks.p_mod4 = p % 4;
    cert.checks.q_mod8 = q % 8;
    cert.checks.jacobi2q = jacobi(2, from_u64(q));
    cert.checks.divides = powmod_u64(2, p, q) == 1;
    cert.checks.proper = from_u64(q) < pow2(p) - 1;
    if (!cert.checks.divides || !cert.checks.proper || cert.checks.q_mod8 != 7 || cert.checks.jacobi2q != 1)
        throw InvariantViolation("Sophie-Germain certificate failed to verify for p = " + std::to_string(p));
    return cert;
}

std::vector<SophieGermainCertificate> enumerate_sophie_germain(std::uint64_t limit) {
    std::vector<SophieGermainCertificate> out;
    for (std::uint64_t p = 7; p <= limit; p += 4) {
        if (is_prime_u64(p) && is_prime_u64(2 * p + 1)) out.push_back(sophie_germain_composite(p));
    }
    return out;
}

OrderMap order_map(std::uint64_t x, unsigned jobs) {
    if (x < 3) throw DomainError("order_map: x must be >= 3");
    const auto table = sieve_primes(x);
    std::vector<std::uint64_t> primes(table.primes().begin() + 1, table.primes().end());
    std::vector<std::uint64_t> orders(primes.size());

    jobs = std::max(1u, std::min<unsigned>(jobs, static_cast<unsigned>(primes.size())));
    auto work = [&](std::size_t begin, std::size_t end) {
        for (std::size_t i = begin; i < end; ++i) orders[i] = multiplicative_order(primes[i]);
    };
    if (jobs == 1) {
        work(0, primes.size());
    } else {
        std::vector<std::jthread> pool;
        const std::size_t chunk = (primes.size() + jobs - 1) / jobs;
        for (std::size_t b = 0; b < primes.size(); b += chunk)
            pool.emplace_back(work, b, std::min(primes.size(), b + chunk));
    }

    OrderMap map;
    for (std::size_t i = 0; i < primes.size(); ++i) {
        auto& bucket = map[orders[i]];
        bucket.m = orders[i];
        bucket.witnesses.push_back(primes[i]);
    }
    return map;
}

double census_threshold(std::uint64_t x, const CensusConfig& config) {
    if (config.threshold_override) return static_cast<double>(*config.threshold_override);
    const double lx = std::log(static_cast<double>(x));
    return config.threshold_factor.value() * std::sqrt(static_cast<double>(x)) * lx * lx;
}

std::vector<std::uint64_t> enumerate_L_d(std::uint64_t x, std::uint64_t d, const CensusConfig& config) {
    if (x < 16) throw DomainError("enumerate_L_d: x must be >= 16");
    if (d == 0) throw DomainError("enumerate_L_d: d must be >= 1");
    const double threshold = census_threshold(x, config);
    std::vector<std::uint64_t> out;
    const auto table = sieve_primes(x);
    for (std::uint64_t p : table.primes()) {
        if (2 * p <= x || p % 4 != 3 || (p - 1) % d != 0) continue;
        const std::uint64_t ord = multiplicative_order(p);
        if (ord == (p - 1) / d && static_cast<double>(ord) > threshold) out.push_back(p);
    }
    return out;
}

CensusResult composite_census(std::uint64_t x, const CensusConfig& config) {
    if (x < 16) throw DomainError("composite_census: x must be >= 16");
    CensusResult result;
    result.x = x;
    result.threshold = census_threshold(x, config);
    result.x_pow_theta = std::pow(static_cast<double>(x), config.theta.value());

    for (const auto& [m, bucket] : order_map(x)) {
        if (static_cast<double>(m) <= result.threshold) continue;
        const CyclotomicRecord rec = cyclotomic_record(m);
        for (std::uint64_t p : bucket.witnesses) {
            bool counted = false;
            if (m % 8 != 4) {
                counted = rec.psi > p;
            } else {
                const auto& s = *rec.split;
                const bool in_plus = mpz_divisible_ui_p(s.psi_plus.get_mpz_t(), p) != 0;
                const BigNat& host = in_plus ? s.psi_plus : s.psi_minus;
                const BigNat& other = in_plus ? s.psi_minus : s.psi_plus;
                counted = host > p && other > 1;
            }
            if (counted) {
                const CensusSet set = m % 8 == 4 ? CensusSet::C2 : CensusSet::C1;
                result.witnessed.push_back({m, p, set});
                ++(set == CensusSet::C1 ? result.c1_composite_count : result.c2_not_two_prime_count);
                break;
            }
        }
    }
    return result;
}

}  // namespace cyclo
