#include "cyclo/checks.hpp"

#include "cyclo/cyclotomic.hpp"
#include "cyclo/errors.hpp"
#include "cyclo/heuristics.hpp"
#include "cyclo/ntheory.hpp"
#include "cyclo/witnesses.hpp"

#include <algorithm>
#include <sstream>

namespace cyclo {

namespace {

// Collects up to a few counterexamples for the detail line.
class Failures {
public:
    void add(const std::string& what) {
        if (count_++ < 5) shown_ << (count_ > 1 ? "; " : "") << what;
    }
    CheckResult result(std::string name, const std::string& scope) const {
        std::string detail = scope;
        if (count_) detail += ": " + std::to_string(count_) + " failure(s): " + shown_.str();
        return {std::move(name), count_ == 0, std::move(detail)};
    }

private:
    std::size_t count_ = 0;
    std::ostringstream shown_;
};

std::vector<BigNat> phi_values_upto(std::uint64_t limit) {
    std::vector<BigNat> v(limit + 1);
    for (std::uint64_t m = 1; m <= limit; ++m) v[m] = phi_value(m);
    return v;
}

std::uint64_t or_default(std::uint64_t v, std::uint64_t d) { return v ? v : d; }

}  // namespace

bool CheckReport::passed() const {
    return std::all_of(results.begin(), results.end(), [](const CheckResult& r) { return r.passed; });
}

CheckResult check_product_identity(std::uint64_t limit) {
    const auto phi = phi_values_upto(limit);
    Failures f;
    for (std::uint64_t m = 1; m <= limit; ++m) {
        BigNat prod = 1;
        for (std::uint64_t d : divisors(m)) prod *= phi[d];
        if (prod != pow2(m) - 1) f.add("m=" + std::to_string(m));
    }
    return f.result("product-identity", "prod_{d|m} phi_d = 2^m - 1 for m <= " + std::to_string(limit));
}

CheckResult check_size_bounds(std::uint64_t limit) {
    Failures f;
    for (std::uint64_t m = 2; m <= limit; ++m) {
        const BigNat phi = phi_value(m);
        const std::uint64_t t = euler_phi(m);
        if (!(pow2(t - 1) <= phi && phi < pow2(t + 1))) f.add("m=" + std::to_string(m));
    }
    return f.result("size-bounds", "2^(phi(m)-1) <= phi_m < 2^(phi(m)+1) for 2 <= m <= " + std::to_string(limit));
}

std::vector<CheckResult> check_aurifeuillian(std::uint64_t limit) {
    Failures product, nontrivial;
    for (std::uint64_t m = 4; m <= limit; m += 8) {
        const CyclotomicRecord rec = cyclotomic_record(m);
        const auto& s = *rec.split;
        if (s.phi_plus * s.phi_minus != rec.phi || s.psi_plus * s.psi_minus != rec.psi)
            product.add("m=" + std::to_string(m));
        if ((m - 4) / 8 >= 3 && !(s.phi_plus > 1 && s.phi_minus > 1)) nontrivial.add("m=" + std::to_string(m));
    }
    Failures algebra;
    for (std::uint64_t k = 0; k <= 50; ++k) {
        const auto [a, b] = aurifeuillian_multipliers(k);
        if (a * b != pow2(4 * k + 2) + 1) algebra.add("k=" + std::to_string(k));
    }
    const std::string scope = "m = 4 (mod 8), m <= " + std::to_string(limit);
    return {product.result("aurifeuillian-product", scope),
            nontrivial.result("aurifeuillian-nontrivial", scope + ", k >= 3"),
            algebra.result("aurifeuillian-algebraic", "(2^(2k+1)+2^(k+1)+1)(2^(2k+1)-2^(k+1)+1) = 2^(4k+2)+1, k <= 50")};
}

CheckResult check_split_magnitude(std::uint64_t limit, double slack) {
    Failures f;
    for (std::uint64_t m = 28; m <= limit; m += 8) {
        if (!split_magnitude_ok(cyclotomic_record(m), slack)) f.add("m=" + std::to_string(m));
    }
    std::ostringstream scope;
    scope << "|log2 phi^+- - phi(m)/2| <= " << slack << " for m = 8k+4, k >= 3, m <= " << limit;
    return f.result("split-magnitude", scope.str());
}

CheckResult check_pairwise_coprime(std::uint64_t limit) {
    std::vector<BigNat> psi(limit + 1);
    for (std::uint64_t m = 1; m <= limit; ++m) psi[m] = cyclotomic_record(m).psi;
    Failures f;
    BigNat g;
    for (std::uint64_t m = 1; m <= limit; ++m)
        for (std::uint64_t n = m + 1; n <= limit; ++n) {
            mpz_gcd(g.get_mpz_t(), psi[m].get_mpz_t(), psi[n].get_mpz_t());
            if (g != 1) f.add("(" + std::to_string(m) + "," + std::to_string(n) + ")");
        }
    return f.result("pairwise-coprime", "gcd(psi_m, psi_n) = 1 for m < n <= " + std::to_string(limit));
}

CheckResult check_bang(std::uint64_t limit) {
    Failures f;
    for (std::uint64_t m = 1; m <= limit; ++m) {
        const bool exceptional = m == 1 || m == 6;
        const bool unit = cyclotomic_record(m).psi == 1;
        if (unit != exceptional) f.add("m=" + std::to_string(m));
    }
    return f.result("bang", "psi_m > 1 exactly for m not in {1, 6}, m <= " + std::to_string(limit));
}

CheckResult check_base2_blindness_for(const std::vector<std::uint64_t>& composite_ms) {
    Failures f;
    for (std::uint64_t m : composite_ms) {
        const BigNat psi = cyclotomic_record(m).psi;
        if (!fermat_test(psi, 2)) {
            f.add("m=" + std::to_string(m) + " fails base-2 Fermat");
            continue;
        }
        const bool rejected = !fermat_test(psi, 3) || mpz_perfect_square_p(psi.get_mpz_t()) ||
                              !strong_probable_prime(psi, 2) || !strong_lucas(psi);
        if (!rejected) f.add("m=" + std::to_string(m) + " passes base 3 and the strong tests");
    }
    return f.result("base2-blindness", std::to_string(composite_ms.size()) +
                                           " composite psi_m: base-2 Fermat passes, base 3 or strong tests reject");
}

CheckResult check_base2_blindness(std::uint64_t limit, const PipelineConfig& config) {
    const Classifier classifier(config);
    std::vector<std::uint64_t> composite;
    for (std::uint64_t m = 2; m <= limit; ++m) {
        const BigNat psi = cyclotomic_record(m).psi;
        if (classifier.classify(psi, m).tag == ClassTag::Composite) composite.push_back(m);
    }
    return check_base2_blindness_for(composite);
}

std::vector<CheckResult> check_phi_ratio(const std::vector<std::uint64_t>& zs) {
    std::vector<CheckResult> out;
    for (std::uint64_t z : zs) {
        const RatioSum s = phi_ratio_sum(z);
        std::ostringstream d;
        d.precision(10);
        d << "sum (n/phi(n))^2, n <= " << z << " = " << s.value << " (upper " << s.upper_bound << ") vs 4.5z = "
          << 4.5 * static_cast<double>(z);
        out.push_back({"phi-ratio z=" + std::to_string(z), s.upper_bound < 4.5 * static_cast<double>(z), d.str()});
    }
    return out;
}

std::vector<CheckResult> check_small_totient(const std::vector<std::uint64_t>& zs) {
    std::vector<CheckResult> out;
    for (std::uint64_t z : zs) {
        for (std::int64_t den : {1, 2, 4, 8}) {
            const Rational delta{1, den};
            const std::uint64_t count = small_totient_count(z, delta);
            const bool ok = small_totient_bound_holds(count, z, delta);
            std::ostringstream d;
            d << "#{n <= " << z << " : phi(n)/n <= 1/" << den << "} = " << count << " vs 4.5 delta^2 z = "
              << 4.5 * static_cast<double>(z) / static_cast<double>(den * den);
            out.push_back({"small-totient z=" + std::to_string(z) + " delta=1/" + std::to_string(den), ok, d.str()});
        }
    }
    return out;
}

CheckResult check_h_identity(std::uint64_t limit) {
    Failures f;
    for (std::uint64_t j = 1; j <= limit; ++j)
        if (!h_identity_check(j)) f.add("j=" + std::to_string(j));
    return f.result("h-identity", "(j/phi(j))^2 = sum_{d|j squarefree} h(d) for j <= " + std::to_string(limit));
}

CheckResult check_sophie_germain(std::uint64_t limit) {
    Failures f;
    const auto certs = enumerate_sophie_germain(limit);
    for (const auto& c : certs) {
        const BigNat q = from_u64(c.q);
        const bool ok = c.q == 2 * c.p + 1 && modpow(2, from_u64(c.p), q) == 1 && c.q % 8 == 7 &&
                        jacobi(2, q) == 1 && q < pow2(c.p) - 1;
        if (!ok) f.add("p=" + std::to_string(c.p));
    }
    return f.result("sophie-germain", std::to_string(certs.size()) + " certificates for p <= " +
                                          std::to_string(limit));
}

const std::vector<std::string_view>& check_suite_names() {
    static const std::vector<std::string_view> names{
        "identities", "bounds",        "aurifeuille", "magnitude", "coprimality", "bang",
        "pseudoprime", "phi-ratio",    "small-totient", "h-identity", "sophie",  "all"};
    return names;
}

CheckReport run_check_suite(std::string_view suite, const CheckParams& p) {
    CheckReport report{std::string(suite), {}};
    auto& out = report.results;
    auto append = [&out](std::vector<CheckResult> rs) { out.insert(out.end(), rs.begin(), rs.end()); };
    const bool all = suite == "all";
    bool matched = all;

    if (all || suite == "identities") {
        matched = true;
        out.push_back(check_product_identity(or_default(p.limit, 5000)));
    }
    if (all || suite == "bounds") {
        matched = true;
        out.push_back(check_size_bounds(or_default(p.limit, 5000)));
    }
    if (all || suite == "aurifeuille") {
        matched = true;
        append(check_aurifeuillian(or_default(p.limit, 5000)));
    }
    if (all || suite == "magnitude") {
        matched = true;
        out.push_back(check_split_magnitude(or_default(p.limit, 5000), p.magnitude_slack));
    }
    if (all || suite == "coprimality") {
        matched = true;
        out.push_back(check_pairwise_coprime(or_default(p.limit, 300)));
    }
    if (all || suite == "bang") {
        matched = true;
        out.push_back(check_bang(or_default(p.limit, 5000)));
    }
    if (all || suite == "pseudoprime") {
        matched = true;
        out.push_back(check_base2_blindness(or_default(p.limit, 1024), p.config));
    }
    if (all || suite == "phi-ratio") {
        matched = true;
        append(check_phi_ratio(p.z ? std::vector<std::uint64_t>{p.z}
                                   : std::vector<std::uint64_t>{1000, 10000, 100000, 1000000}));
    }
    if (all || suite == "small-totient") {
        matched = true;
        append(check_small_totient(p.z ? std::vector<std::uint64_t>{p.z}
                                       : std::vector<std::uint64_t>{1000, 10000, 100000}));
    }
    if (all || suite == "h-identity") {
        matched = true;
        out.push_back(check_h_identity(or_default(p.limit, 10000)));
    }
    if (all || suite == "sophie") {
        matched = true;
        out.push_back(check_sophie_germain(or_default(p.limit, 100000)));
    }
    if (!matched) throw DomainError("unknown check suite '" + std::string(suite) + "'");
    return report;
}

}  // namespace cyclo
