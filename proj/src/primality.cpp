#include "cyclo/primality.hpp"

#include "cyclo/errors.hpp"

#include <array>
#include <string>

namespace cyclo {

namespace {

// Deterministic Miller-Rabin base set and the bound below which it is proof.
constexpr std::array<unsigned long, 12> kDeterministicBases{2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37};
const BigNat kDeterministicLimit("3317044064679887385961981", 10);

constexpr std::uint64_t kSmallPrimeLimit = 1024;

void require_odd_at_least_3(const BigNat& n, const char* who) {
    if (cmp(n, 3) < 0 || mpz_even_p(n.get_mpz_t()))
        throw DomainError(std::string(who) + ": n must be odd and >= 3");
}

// x / 2 mod n for odd n, x in [0, n).
void halve_mod(BigNat& x, const BigNat& n) {
    if (mpz_odd_p(x.get_mpz_t())) x += n;
    x >>= 1;
}

void reduce(BigNat& x, const BigNat& n) { mpz_mod(x.get_mpz_t(), x.get_mpz_t(), n.get_mpz_t()); }

Classification composite(std::string_view how, std::optional<BigNat> witness = {}) {
    return {ClassTag::Composite, std::move(witness), std::string(how)};
}

}  // namespace

std::string_view to_string(ClassTag tag) {
    switch (tag) {
        case ClassTag::Unit: return "unit";
        case ClassTag::ProvenPrime: return "proven_prime";
        case ClassTag::ProbablePrime: return "probable_prime";
        case ClassTag::Composite: return "composite";
    }
    return "?";
}

ClassTag class_tag_from_string(std::string_view s) {
    for (ClassTag t : {ClassTag::Unit, ClassTag::ProvenPrime, ClassTag::ProbablePrime, ClassTag::Composite})
        if (to_string(t) == s) return t;
    throw DomainError("unknown classification tag '" + std::string(s) + "'");
}

bool fermat_test(const BigNat& n, unsigned long base) {
    if (cmp(n, 2) < 0) throw DomainError("fermat_test: n must be >= 2");
    BigNat b = base;
    reduce(b, n);
    return modpow(b, n, n) == b;
}

bool strong_probable_prime(const BigNat& n, unsigned long base) {
    require_odd_at_least_3(n, "strong_probable_prime");
    BigNat a = base;
    reduce(a, n);
    if (sgn(a) == 0) return true;
    const BigNat n_minus_1 = n - 1;
    BigNat d = n_minus_1;
    const auto s = mpz_scan1(d.get_mpz_t(), 0);
    d >>= s;
    BigNat x = modpow(a, d, n);
    if (x == 1 || x == n_minus_1) return true;
    for (mp_bitcnt_t r = 1; r < s; ++r) {
        x *= x;
        reduce(x, n);
        if (x == n_minus_1) return true;
        if (x == 1) return false;
    }
    return false;
}

bool strong_lucas(const BigNat& n) {
    require_odd_at_least_3(n, "strong_lucas");
    if (mpz_perfect_square_p(n.get_mpz_t()))
        throw DomainError("strong_lucas: n is a perfect square");

    long D = 5;
    for (;;) {
        int j = jacobi(D, n);
        if (j == -1) break;
        if (j == 0 && cmp(abs(BigNat(D)), n) != 0) return false;  // shares a factor with n
        D = D > 0 ? -(D + 2) : -D + 2;
    }
    const long Q = (1 - D) / 4;

    // n + 1 = d * 2^s
    BigNat d = n + 1;
    const auto s = mpz_scan1(d.get_mpz_t(), 0);
    d >>= s;

    BigNat Qn = Q;
    reduce(Qn, n);
    BigNat Dn = D;
    reduce(Dn, n);

    // Index k = 1: U_1 = 1, V_1 = P = 1, Q^1.
    BigNat U = 1, V = 1, Qk = Qn, t;
    for (auto bit = static_cast<long>(mpz_sizeinbase(d.get_mpz_t(), 2)) - 2; bit >= 0; --bit) {
        // k -> 2k
        U *= V;
        reduce(U, n);
        V = V * V - 2 * Qk;
        reduce(V, n);
        Qk *= Qk;
        reduce(Qk, n);
        if (mpz_tstbit(d.get_mpz_t(), static_cast<mp_bitcnt_t>(bit))) {
            // k -> k + 1 with P = 1
            t = U + V;
            reduce(t, n);
            halve_mod(t, n);
            V = Dn * U + V;
            reduce(V, n);
            halve_mod(V, n);
            U = std::move(t);
            Qk *= Qn;
            reduce(Qk, n);
        }
    }
    if (sgn(U) == 0 || sgn(V) == 0) return true;
    for (mp_bitcnt_t r = 1; r < s; ++r) {
        V = V * V - 2 * Qk;
        reduce(V, n);
        if (sgn(V) == 0) return true;
        Qk *= Qk;
        reduce(Qk, n);
    }
    return false;
}

std::optional<std::pair<BigNat, unsigned long>> is_perfect_power(const BigNat& n) {
    if (cmp(n, 1) < 0) throw DomainError("is_perfect_power: n must be >= 1");
    if (n == 1) return std::nullopt;
    const auto max_exp = static_cast<unsigned long>(bit_length(n) - 1);
    BigNat root;
    // Largest exponent first gives the smallest base.
    for (unsigned long e = max_exp; e >= 2; --e) {
        if (mpz_root(root.get_mpz_t(), n.get_mpz_t(), e) != 0) return std::make_pair(root, e);
    }
    return std::nullopt;
}

std::optional<std::uint64_t> trial_division_primitive(const BigNat& n, std::uint64_t m,
                                                      std::uint64_t bound) {
    if (m == 0) throw DomainError("trial_division_primitive: m must be >= 1");
    if (bound < 2) return std::nullopt;
    PipelineConfig cfg;
    cfg.trial_bound = bound;
    return Classifier(std::move(cfg)).primitive_factor(n, m);
}

Classifier::Classifier(PipelineConfig config) : config_(std::move(config)) {
    if (config_.trial_bound < 2) throw DomainError("PipelineConfig: trial_bound must be >= 2");
    table_ = std::make_shared<const PrimeTable>(sieve_primes(config_.trial_bound));
}

std::optional<std::uint64_t> Classifier::small_factor(const BigNat& n, std::uint64_t limit) const {
    for (std::uint64_t p : table_->primes()) {
        if (p > limit) break;
        if (cmp(n, p) <= 0) break;
        if (mpz_divisible_ui_p(n.get_mpz_t(), p)) return p;
    }
    return std::nullopt;
}

std::optional<std::uint64_t> Classifier::primitive_factor(const BigNat& n, std::uint64_t m) const {
    if (m == 0) throw DomainError("primitive_factor: m must be >= 1");
    const std::uint64_t bound = config_.trial_bound;
    for (std::uint64_t c = 1 + m; c <= bound; c += m) {
        if (cmp(n, c) <= 0) break;
        if (table_->contains(c) && mpz_divisible_ui_p(n.get_mpz_t(), c)) return c;
    }
    return std::nullopt;
}

Classification Classifier::classify(const BigNat& n, std::optional<std::uint64_t> m_context) const {
    if (sgn(n) <= 0) throw DomainError("classify: n must be >= 1");
    if (n == 1) return {ClassTag::Unit, std::nullopt, std::string(method::kUnit)};

    const std::uint64_t bound = config_.trial_bound;
    if (cmp(n, bound) <= 0) {
        const std::uint64_t v = to_u64(n);
        if (table_->contains(v)) return {ClassTag::ProvenPrime, std::nullopt, std::string(method::kTrialDivision)};
        return composite(method::kTrialDivision, from_u64(*small_factor(n, v)));
    }

    const std::uint64_t small_limit = m_context ? std::min(bound, kSmallPrimeLimit) : bound;
    if (auto f = small_factor(n, small_limit)) return composite(method::kTrialDivision, from_u64(*f));
    if (m_context && *m_context >= 2) {
        if (auto f = primitive_factor(n, *m_context)) return composite(method::kTrialDivision, from_u64(*f));
    }
    if (!m_context && from_u64(bound) * bound >= n)
        return {ClassTag::ProvenPrime, std::nullopt, std::string(method::kTrialDivision)};

    if (!fermat_test(n, 3)) return composite(method::kFermat3);

    BigNat root;
    if (mpz_perfect_square_p(n.get_mpz_t())) {
        mpz_sqrt(root.get_mpz_t(), n.get_mpz_t());
        return composite(method::kPerfectSquare, std::move(root));
    }
    if (!strong_probable_prime(n, 2)) return composite(method::kStrongBase2);
    if (!strong_lucas(n)) return composite(method::kStrongLucas);

    if (n < config_.proven_threshold && n < kDeterministicLimit) {
        for (unsigned long a : kDeterministicBases)
            if (!strong_probable_prime(n, a)) return composite(method::kDeterministicBases);
        return {ClassTag::ProvenPrime, std::nullopt, std::string(method::kDeterministicBases)};
    }
    for (unsigned long a : config_.mr_extra_bases)
        if (!strong_probable_prime(n, a)) return composite(method::kExtraBases);
    return {ClassTag::ProbablePrime, std::nullopt, std::string(method::kExtraBases)};
}

Classification classify(const BigNat& n, std::optional<std::uint64_t> m_context,
                        const PipelineConfig& config) {
    return Classifier(config).classify(n, m_context);
}

}  // namespace cyclo
