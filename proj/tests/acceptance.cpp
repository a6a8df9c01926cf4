// End-to-end acceptance run: one PASS/FAIL line per criterion, nonzero exit
// if any criterion fails.

#include "cyclo/checks.hpp"
#include "cyclo/cyclotomic.hpp"
#include "cyclo/heuristics.hpp"
#include "cyclo/primality.hpp"
#include "cyclo/survey.hpp"
#include "cyclo/witnesses.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

using namespace cyclo;

namespace {

struct Outcome {
    bool ok;
    std::string detail;
};

int g_failed = 0;

void report(int id, const std::string& name, const std::function<Outcome()>& body) {
    const auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
        o = body();
    } catch (const std::exception& e) {
        o = {false, std::string("exception: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (!o.ok) ++g_failed;
    std::printf("%s criterion %d (%s): %s [%.1fs]\n", o.ok ? "PASS" : "FAIL", id, name.c_str(), o.detail.c_str(), secs);
    std::fflush(stdout);
}

std::string row_text(const SurveyRow& r) {
    std::ostringstream s;
    s << "(" << r.count_phi_prime << "," << r.count_psi_prime << "," << r.count_psi_plus_prime << ","
      << r.count_psi_minus_prime << ")";
    return s.str();
}

// Survey through k = 12, shared by criteria 1, 2 and 7.
const SurveyOutcome& survey12() {
    static const SurveyOutcome out = [] {
        SurveyOptions opts;
        opts.jobs = std::max(1u, std::thread::hardware_concurrency());
        return run_survey(12, opts);
    }();
    return out;
}

Outcome survey_rows() {
    const std::vector<SurveyRow> expected{
        {1, 1, 1, 0, 0},        {2, 3, 3, 1, 0},        {3, 7, 6, 1, 0},        {4, 14, 13, 2, 0},
        {5, 23, 25, 4, 1},      {6, 33, 36, 7, 5},      {7, 49, 52, 13, 8},     {8, 64, 68, 20, 16},
        {9, 81, 86, 24, 25},    {10, 99, 106, 30, 33},  {11, 122, 129, 34, 43}, {12, 140, 147, 44, 54}};
    const auto& rows = survey12().rows;
    std::string mismatches;
    for (std::size_t i = 0; i < expected.size(); ++i) {
        if (i >= rows.size() || !(rows[i] == expected[i]))
            mismatches += " k=" + std::to_string(i + 1) + " got " + (i < rows.size() ? row_text(rows[i]) : "none");
    }
    if (!mismatches.empty()) return {false, "mismatch:" + mismatches};
    return {true, "12 rows exact, k=12 " + row_text(rows.back())};
}

Outcome appendix() {
    const auto assets = load_appendix_assets(default_assets_dir());
    const auto rep = validate_appendix(4096, survey12().records, assets);
    std::ostringstream s;
    bool complete_list = false;
    for (const auto& l : rep.lists) {
        s << to_string(l.list) << " " << l.computed.size() << "/" << l.expected.size() << (l.ok() ? " ok; " : " MISMATCH; ");
        if (l.list == AppendixList::PsiLtPhiPrime)
            complete_list = l.computed == std::vector<std::uint64_t>{18, 20, 21, 54, 147, 342, 602, 889};
    }
    if (!complete_list) s << "psi<phi list differs from {18,...,889}";
    return {rep.ok() && complete_list, s.str()};
}

Outcome density_sums() {
    const double expected[] = {223.4, 254.4, 287.4};
    bool ok = true;
    std::ostringstream s;
    s.precision(6);
    for (unsigned k = 15; k <= 17; ++k) {
        const double v = density_sum(k, true).sum;
        ok = ok && std::abs(v - expected[k - 15]) <= 0.3;
        s << "k=" << k << " " << v << " vs " << expected[k - 15] << "; ";
    }
    return {ok, s.str()};
}

Outcome constant() {
    const auto c = constant_c();
    const bool six = std::floor(c.value * 1e6) == 999774.0;
    const double width = c.zeta3_upper - c.zeta3_lower;
    std::ostringstream s;
    s.precision(12);
    s << "c = " << c.value << ", zeta(3) bracket width " << width << ", c bracket width " << (c.upper - c.lower);
    return {six && width < 1e-8 && c.lower <= c.value && c.value <= c.upper, s.str()};
}

Outcome identities() {
    std::vector<CheckResult> rs{check_product_identity(5000), check_size_bounds(5000)};
    for (auto& r : check_aurifeuillian(5000)) rs.push_back(r);
    rs.push_back(check_pairwise_coprime(300));
    bool ok = true;
    std::string s;
    for (const auto& r : rs) {
        ok = ok && r.passed;
        s += r.name + (r.passed ? " ok; " : " FAILED (" + r.detail + "); ");
    }
    return {ok, s};
}

Outcome sophie() {
    const auto certs = enumerate_sophie_germain(100000);
    std::size_t bad = 0;
    for (const auto& c : certs) {
        const mpz_class q = c.q;
        mpz_class r;
        mpz_powm_ui(r.get_mpz_t(), mpz_class(2).get_mpz_t(), c.p, q.get_mpz_t());
        const bool ok = c.q == 2 * c.p + 1 && r == 1 && c.q % 8 == 7 && mpz_jacobi(mpz_class(2).get_mpz_t(), q.get_mpz_t()) == 1 &&
                        q < pow2(c.p) - 1;
        bad += !ok;
    }
    const bool first = certs.size() >= 3 && certs[0].p == 11 && certs[1].p == 23 && certs[2].p == 83;
    return {bad == 0 && first, std::to_string(certs.size()) + " certificates, " + std::to_string(bad) +
                                   " failed; first p = " + (certs.size() >= 3 ? std::to_string(certs[0].p) + ", " +
                                   std::to_string(certs[1].p) + ", " + std::to_string(certs[2].p) : "?")};
}

Outcome blindness() {
    std::vector<std::uint64_t> composite;
    for (const auto& r : survey12().records)
        if (r.class_psi == ClassTag::Composite) composite.push_back(r.m);
    const auto res = check_base2_blindness_for(composite);
    return {res.passed, res.detail};
}

Outcome inequalities() {
    std::vector<CheckResult> rs = check_phi_ratio({1000, 10000, 100000, 1000000});
    for (auto& r : check_small_totient({1000, 10000, 100000})) rs.push_back(r);
    rs.push_back(check_h_identity(10000));
    std::size_t failed = 0;
    std::string s;
    for (const auto& r : rs)
        if (!r.passed) {
            ++failed;
            s += r.name + ": " + r.detail + "; ";
        }
    return {failed == 0, std::to_string(rs.size()) + " checks, " + std::to_string(failed) + " failed " + s};
}

Outcome census() {
    CensusConfig cfg;
    cfg.threshold_override = 0;
    const auto r = composite_census(1000, cfg);
    std::size_t bad = 0;
    for (const auto& w : r.witnessed) {
        const auto rec = cyclotomic_record(w.m);
        const mpz_class p = w.p;
        if (w.set == CensusSet::C1) {
            if (!(rec.psi % p == 0 && rec.psi > p)) ++bad;
        } else {
            const auto& s = *rec.split;
            const bool plus = s.psi_plus % p == 0;
            const mpz_class& mine = plus ? s.psi_plus : s.psi_minus;
            const mpz_class& other = plus ? s.psi_minus : s.psi_plus;
            if (!(mine % p == 0 && mine > p && other > 1)) ++bad;
        }
    }
    return {r.c1_composite_count >= 32 && bad == 0,
            "C1 = " + std::to_string(r.c1_composite_count) + ", C2 = " + std::to_string(r.c2_not_two_prime_count) +
                ", " + std::to_string(r.witnessed.size()) + " witnesses re-divided, " + std::to_string(bad) + " bad"};
}

Outcome soundness() {
    constexpr std::uint64_t kTop = 10'000'000;
    // Plain sieve of Eratosthenes as ground truth.
    std::vector<char> composite(kTop + 1, 0);
    composite[0] = composite[1] = 1;
    for (std::uint64_t i = 2; i * i <= kTop; ++i)
        if (!composite[i])
            for (std::uint64_t j = i * i; j <= kTop; j += i) composite[j] = 1;

    PipelineConfig small;
    small.trial_bound = 100;
    const Classifier full_cfg, small_cfg(small);
    std::size_t disagreements = 0, primes = 0;
    std::string first;
    for (std::uint64_t i = 0; i < 100000; ++i) {
        const std::uint64_t n = 1 + (i * 9999991ULL) % kTop;
        const bool truth = !composite[n];
        primes += truth;
        for (const Classifier* c : {&full_cfg, &small_cfg}) {
            const ClassTag t = c->classify(mpz_class(static_cast<unsigned long>(n))).tag;
            const bool agree = n == 1 ? t == ClassTag::Unit : (is_prime_tag(t) == truth);
            if (!agree) {
                if (!disagreements) first = " first at n = " + std::to_string(n);
                ++disagreements;
            }
        }
    }
    return {disagreements == 0, "100000 grid values (" + std::to_string(primes) + " prime), two trial bounds, " +
                                    std::to_string(disagreements) + " disagreements" + first};
}

}  // namespace

int main() {
    report(1, "survey rows through k=12", survey_rows);
    report(2, "reference m-lists to 4096", appendix);
    report(3, "density sums", density_sums);
    report(4, "constant c", constant);
    report(5, "identity suites", identities);
    report(6, "Sophie-Germain certificates", sophie);
    report(7, "base-2 blindness", blindness);
    report(8, "totient inequalities", inequalities);
    report(9, "census at x=1000", census);
    report(10, "classification soundness", soundness);
    std::printf("%d of 10 criteria passed\n", 10 - g_failed);
    return g_failed == 0 ? 0 : 1;
}
