#include "cyclo/heuristics.hpp"

#include "cyclo/errors.hpp"
#include "cyclo/ntheory.hpp"

#include <gmpxx.h>
#include <mpfr.h>

#include <cmath>
#include <limits>
#include <numbers>
#include <string>

namespace cyclo {

namespace {

// Neumaier's compensated summation; deterministic for a fixed term order.
class CompensatedSum {
public:
    void add(double x) {
        const double t = sum_ + x;
        if (std::abs(sum_) >= std::abs(x))
            comp_ += (sum_ - t) + x;
        else
            comp_ += (x - t) + sum_;
        sum_ = t;
    }
    double value() const { return sum_ + comp_; }

private:
    double sum_ = 0;
    double comp_ = 0;
};

double density_term(std::uint64_t m, std::uint64_t totient) {
    return std::exp(std::numbers::egamma) * std::log(static_cast<double>(m)) /
           (static_cast<double>(totient) * std::numbers::ln2);
}

void require_delta(Rational delta) {
    if (delta.num <= 0 || delta.den <= 0 || delta.num > delta.den)
        throw DomainError("delta must satisfy 0 < delta <= 1");
}

}  // namespace

std::string_view to_string(IndexSet s) {
    return s == IndexSet::All ? "all" : "exclude_4_mod_8";
}

double density(std::uint64_t m) {
    if (m < 2) throw DomainError("density: m must be >= 2");
    return density_term(m, euler_phi(m));
}

DensityReport density_sum(unsigned k, bool exclude_4_mod_8) {
    if (k < 1 || k > 20) throw DomainError("density_sum: k must be in [1, 20]");
    const std::uint32_t top = std::uint32_t{1} << k;
    const auto phi = totient_table(top);
    CompensatedSum acc;
    for (std::uint32_t m = 2; m <= top; ++m) {
        if (exclude_4_mod_8 && m % 8 == 4) continue;
        acc.add(density_term(m, phi[m]));
    }
    DensityReport r;
    r.k = k;
    r.sum = acc.value();
    r.index_set = exclude_4_mod_8 ? IndexSet::Exclude4Mod8 : IndexSet::All;
    r.predicted_c_ratio = r.sum / (static_cast<double>(k) * k);
    return r;
}

ConstantC constant_c() {
    constexpr std::uint64_t kTerms = 20000;
    long double partial = 0;
    // smallest terms first
    for (std::uint64_t n = kTerms; n >= 1; --n) {
        const long double nn = static_cast<long double>(n);
        partial += 1.0L / (nn * nn * nn);
    }
    const long double N = kTerms;
    // integral bounds on the tail sum over n > N of 1/n^3
    const long double lo = partial + 1.0L / (2.0L * (N + 1) * (N + 1));
    const long double hi = partial + 1.0L / (2.0L * N * N);

    const long double pi = std::numbers::pi_v<long double>;
    const long double zeta2 = pi * pi / 6.0L;
    const long double zeta6 = pi * pi * pi * pi * pi * pi / 945.0L;
    const long double scale = 5.0L / 12.0L * std::exp(std::numbers::egamma_v<long double>) * zeta2 /
                              zeta6 * std::numbers::ln2_v<long double>;

    ConstantC c;
    c.zeta3_terms = kTerms;
    c.zeta3_lower = static_cast<double>(lo);
    c.zeta3_upper = static_cast<double>(hi);
    c.lower = static_cast<double>(scale * lo);
    c.upper = static_cast<double>(scale * hi);
    c.value = static_cast<double>(scale * (lo + hi) / 2.0L);
    return c;
}

RatioSum phi_ratio_sum(std::uint64_t z) {
    if (z < 1) throw DomainError("phi_ratio_sum: z must be >= 1");
    if (z > std::numeric_limits<std::uint32_t>::max()) throw DomainError("phi_ratio_sum: z too large");
    const auto phi = totient_table(static_cast<std::uint32_t>(z));

    mpfr_t up, term;
    mpfr_init2(up, 128);
    mpfr_init2(term, 128);
    mpfr_set_ui(up, 0, MPFR_RNDU);
    CompensatedSum approx;
    for (std::uint64_t n = 1; n <= z; ++n) {
        mpfr_set_ui(term, static_cast<unsigned long>(n), MPFR_RNDU);
        mpfr_div_ui(term, term, phi[n], MPFR_RNDU);
        mpfr_sqr(term, term, MPFR_RNDU);
        mpfr_add(up, up, term, MPFR_RNDU);
        const double r = static_cast<double>(n) / phi[n];
        approx.add(r * r);
    }
    RatioSum out;
    out.value = approx.value();
    out.upper_bound = mpfr_get_d(up, MPFR_RNDU);
    mpfr_clear(up);
    mpfr_clear(term);
    return out;
}

bool h_identity_check(std::uint64_t j) {
    if (j < 1) throw DomainError("h_identity_check: j must be >= 1");
    mpq_class ratio(from_u64(j), from_u64(euler_phi(j)));
    ratio.canonicalize();
    const mpq_class lhs = ratio * ratio;

    mpq_class rhs = 0;
    for (std::uint64_t d : divisors(j)) {
        const auto f = factorize(d);
        bool squarefree = true;
        mpq_class h = 1;
        for (const auto& pe : f) {
            if (pe.exponent > 1) {
                squarefree = false;
                break;
            }
            const BigNat p = from_u64(pe.prime);
            mpq_class hp(2 * p - 1, (p - 1) * (p - 1));
            hp.canonicalize();
            h *= hp;
        }
        if (squarefree) rhs += h;
    }
    return lhs == rhs;
}

std::uint64_t small_totient_count(std::uint64_t z, Rational delta) {
    require_delta(delta);
    if (z < 1) throw DomainError("small_totient_count: z must be >= 1");
    if (z > std::numeric_limits<std::uint32_t>::max()) throw DomainError("small_totient_count: z too large");
    const auto phi = totient_table(static_cast<std::uint32_t>(z));
    std::uint64_t count = 0;
    for (std::uint64_t n = 1; n <= z; ++n) {
        const auto lhs = static_cast<unsigned __int128>(phi[n]) * static_cast<std::uint64_t>(delta.den);
        const auto rhs = static_cast<unsigned __int128>(n) * static_cast<std::uint64_t>(delta.num);
        if (lhs <= rhs) ++count;
    }
    return count;
}

bool small_totient_bound_holds(std::uint64_t count, std::uint64_t z, Rational delta) {
    require_delta(delta);
    // count < (9/2) (num/den)^2 z  <=>  2 count den^2 < 9 num^2 z
    const BigNat den = delta.den, num = delta.num;
    return 2 * from_u64(count) * den * den < 9 * num * num * from_u64(z);
}

}  // namespace cyclo
