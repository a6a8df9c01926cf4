#include "cyclo/cyclotomic.hpp"

#include "cyclo/errors.hpp"
#include "cyclo/ntheory.hpp"

#include <cmath>
#include <string>

namespace cyclo {

BigNat phi_value(std::uint64_t m) {
    if (m == 0) throw DomainError("phi_value: m must be >= 1");
    BigNat numerator = 1;
    BigNat denominator = 1;
    for (std::uint64_t d : divisors(m)) {
        int mu = mobius(m / d);
        if (mu == 0) continue;
        BigNat term = pow2(d) - 1;
        if (mu > 0)
            numerator *= term;
        else
            denominator *= term;
    }
    BigNat q, r;
    mpz_tdiv_qr(q.get_mpz_t(), r.get_mpz_t(), numerator.get_mpz_t(), denominator.get_mpz_t());
    if (sgn(r) != 0)
        throw InvariantViolation("phi_value: inexact division for m = " + std::to_string(m));
    return q;
}

std::uint64_t intrinsic_factor(std::uint64_t m) {
    if (m == 0) throw DomainError("intrinsic_factor: m must be >= 1");
    auto f = factorize(m);
    if (f.empty() || f.back().prime == 2) return 1;
    const auto [p, j] = f.back();
    std::uint64_t rest = m;
    for (unsigned i = 0; i < j; ++i) rest /= p;
    return rest == multiplicative_order(p) ? p : 1;
}

std::pair<BigNat, BigNat> aurifeuillian_multipliers(std::uint64_t k) {
    BigNat high = pow2(2 * k + 1);
    BigNat mid = pow2(k + 1);
    return {high + mid + 1, high - mid + 1};
}

std::pair<BigNat, BigNat> aurifeuillian_split(std::uint64_t m, const BigNat& phi) {
    if (m % 8 != 4)
        throw DomainError("aurifeuillian_split: m = " + std::to_string(m) + " is not 4 mod 8");
    const auto [a, b] = aurifeuillian_multipliers((m - 4) / 8);
    BigNat plus, minus;
    mpz_gcd(plus.get_mpz_t(), phi.get_mpz_t(), a.get_mpz_t());
    mpz_gcd(minus.get_mpz_t(), phi.get_mpz_t(), b.get_mpz_t());
    if (plus * minus != phi)
        throw InvariantViolation("aurifeuillian_split: halves do not multiply to phi_" +
                                 std::to_string(m));
    return {plus, minus};
}

std::pair<BigNat, BigNat> psi_split(const CyclotomicRecord& record) {
    if (!record.split) throw DomainError("psi_split: record has no Aurifeuillian split");
    const BigNat delta = from_u64(record.delta);
    auto strip = [&delta](const BigNat& half) {
        BigNat g;
        mpz_gcd(g.get_mpz_t(), half.get_mpz_t(), delta.get_mpz_t());
        return BigNat(half / g);
    };
    return {strip(record.split->phi_plus), strip(record.split->phi_minus)};
}

CyclotomicRecord cyclotomic_record(std::uint64_t m) {
    CyclotomicRecord rec;
    rec.m = m;
    rec.phi = phi_value(m);
    rec.delta = intrinsic_factor(m);
    if (rec.delta > 1) {
        if (!mpz_divisible_ui_p(rec.phi.get_mpz_t(), rec.delta))
            throw InvariantViolation("delta_" + std::to_string(m) + " does not divide phi_m");
        rec.psi = rec.phi / rec.delta;
        if (mpz_divisible_ui_p(rec.psi.get_mpz_t(), rec.delta))
            throw InvariantViolation("delta_" + std::to_string(m) + " divides phi_m twice");
    } else {
        rec.psi = rec.phi;
    }
    if (m % 8 == 4) {
        auto [plus, minus] = aurifeuillian_split(m, rec.phi);
        rec.split = AurifeuillianSplit{std::move(plus), std::move(minus), 0, 0};
        auto [psi_plus, psi_minus] = psi_split(rec);
        if (psi_plus * psi_minus != rec.psi)
            throw InvariantViolation("psi halves do not multiply to psi_" + std::to_string(m));
        rec.split->psi_plus = std::move(psi_plus);
        rec.split->psi_minus = std::move(psi_minus);
    }
    return rec;
}

bool split_magnitude_ok(const CyclotomicRecord& record, double slack) {
    if (!record.split) throw DomainError("split_magnitude_ok: record has no Aurifeuillian split");
    const double half = static_cast<double>(euler_phi(record.m)) / 2.0;
    return std::abs(log2_of(record.split->phi_plus) - half) <= slack &&
           std::abs(log2_of(record.split->phi_minus) - half) <= slack;
}

}  // namespace cyclo
