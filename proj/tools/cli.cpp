#include "cli.hpp"

#include "cyclo/checks.hpp"
#include "cyclo/cyclotomic.hpp"
#include "cyclo/errors.hpp"
#include "cyclo/heuristics.hpp"
#include "cyclo/ntheory.hpp"
#include "cyclo/primality.hpp"
#include "cyclo/survey.hpp"
#include "cyclo/witnesses.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <iomanip>
#include <ostream>
#include <sstream>

namespace cyclo::cli {

namespace {

using json = nlohmann::ordered_json;

constexpr std::size_t kMaxPrintedDigits = 80;

enum class Format { Text, Csv, Json };

struct Globals {
    Format format = Format::Text;
    bool full = false;
    std::uint64_t seed = kDefaultRhoSeed;
};

// A big value: printed exactly up to 80 digits (or with --full), otherwise
// summarized by its digit count.
json big_json(const BigNat& v, const Globals& g) {
    json j;
    const std::size_t digits = decimal_digits(v);
    j["digits"] = digits;
    j["bits"] = bit_length(v);
    if (g.full || digits <= kMaxPrintedDigits) j["value"] = to_decimal(v);
    return j;
}

std::string big_text(const BigNat& v, const Globals& g) {
    const std::size_t digits = decimal_digits(v);
    if (g.full || digits <= kMaxPrintedDigits) return to_decimal(v);
    return "<" + std::to_string(digits) + " digits>";
}

json classification_json(const Classification& c) {
    json j;
    j["class"] = to_string(c.tag);
    j["method"] = c.method;
    if (c.witness) j["witness"] = to_decimal(*c.witness);
    return j;
}

std::string classification_text(const Classification& c) {
    std::string s(to_string(c.tag));
    s += " [" + c.method + "]";
    if (c.witness) s += " witness " + to_decimal(*c.witness);
    return s;
}

void print_json(std::ostream& out, const json& j) { out << j.dump(2) << '\n'; }

// value -------------------------------------------------------------------

json record_json(const CyclotomicRecord& r, const Globals& g) {
    json j;
    j["m"] = r.m;
    j["phi"] = big_json(r.phi, g);
    j["delta"] = r.delta;
    j["psi"] = big_json(r.psi, g);
    if (r.split) {
        j["phi_plus"] = big_json(r.split->phi_plus, g);
        j["phi_minus"] = big_json(r.split->phi_minus, g);
        j["psi_plus"] = big_json(r.split->psi_plus, g);
        j["psi_minus"] = big_json(r.split->psi_minus, g);
    }
    return j;
}

void render_record_text(std::ostream& out, const CyclotomicRecord& r, const Globals& g) {
    auto line = [&](const char* name, const BigNat& v) {
        out << std::left << std::setw(10) << name << big_text(v, g) << "  (" << decimal_digits(v) << " digits)\n";
    };
    out << std::left << std::setw(10) << "m" << r.m << '\n';
    line("phi", r.phi);
    out << std::left << std::setw(10) << "delta" << r.delta << '\n';
    line("psi", r.psi);
    if (r.split) {
        line("phi_plus", r.split->phi_plus);
        line("phi_minus", r.split->phi_minus);
        line("psi_plus", r.split->psi_plus);
        line("psi_minus", r.split->psi_minus);
    }
}

int cmd_value(std::ostream& out, std::uint64_t m, const Globals& g) {
    const CyclotomicRecord r = cyclotomic_record(m);
    if (g.format == Format::Json)
        print_json(out, record_json(r, g));
    else
        render_record_text(out, r, g);
    return kExitOk;
}

// split -------------------------------------------------------------------

int cmd_split(std::ostream& out, std::uint64_t m, const Globals& g) {
    const BigNat phi = phi_value(m);
    const auto [phi_plus, phi_minus] = aurifeuillian_split(m, phi);
    CyclotomicRecord r = cyclotomic_record(m);
    if (g.format == Format::Json) {
        json j;
        j["m"] = m;
        j["k"] = (m - 4) / 8;
        j["phi_plus"] = big_json(phi_plus, g);
        j["phi_minus"] = big_json(phi_minus, g);
        j["delta"] = r.delta;
        j["psi_plus"] = big_json(r.split->psi_plus, g);
        j["psi_minus"] = big_json(r.split->psi_minus, g);
        j["magnitude_ok"] = (m - 4) / 8 >= 3 ? json(split_magnitude_ok(r)) : json(nullptr);
        print_json(out, j);
    } else {
        out << "m = " << m << " (k = " << (m - 4) / 8 << ")\n"
            << "phi_plus  = " << big_text(phi_plus, g) << '\n'
            << "phi_minus = " << big_text(phi_minus, g) << '\n'
            << "delta     = " << r.delta << '\n'
            << "psi_plus  = " << big_text(r.split->psi_plus, g) << '\n'
            << "psi_minus = " << big_text(r.split->psi_minus, g) << '\n';
    }
    return kExitOk;
}

// classify ----------------------------------------------------------------

int cmd_classify(std::ostream& out, std::optional<std::uint64_t> m, const std::string& n_text,
                 const PipelineConfig& config, const Globals& g) {
    const Classifier classifier(config);
    if (!n_text.empty()) {
        const BigNat n = parse_decimal(n_text);
        const Classification c = classifier.classify(n, m);
        if (g.format == Format::Json) {
            json j = classification_json(c);
            j["n"] = big_json(n, g);
            if (m) j["m"] = *m;
            print_json(out, j);
        } else {
            out << big_text(n, g) << ": " << classification_text(c) << '\n';
        }
        return kExitOk;
    }
    if (!m) throw DomainError("classify: give --m, --n, or both");
    const CyclotomicRecord r = cyclotomic_record(*m);
    const std::optional<std::uint64_t> ctx = *m >= 2 ? m : std::nullopt;
    std::vector<std::pair<std::string, Classification>> parts;
    parts.emplace_back("psi", classifier.classify(r.psi, ctx));
    parts.emplace_back("phi", r.delta == 1 ? parts[0].second : classifier.classify(r.phi));
    if (r.split) {
        parts.emplace_back("psi_plus", classifier.classify(r.split->psi_plus, ctx));
        parts.emplace_back("psi_minus", classifier.classify(r.split->psi_minus, ctx));
    }
    if (g.format == Format::Json) {
        json j;
        j["m"] = *m;
        j["delta"] = r.delta;
        for (const auto& [name, c] : parts) j[name] = classification_json(c);
        print_json(out, j);
    } else {
        out << "m = " << *m << ", delta = " << r.delta << '\n';
        for (const auto& [name, c] : parts) out << std::left << std::setw(10) << name << classification_text(c) << '\n';
    }
    return kExitOk;
}

// order -------------------------------------------------------------------

int cmd_order(std::ostream& out, std::optional<std::uint64_t> p, std::optional<std::uint64_t> x, unsigned jobs,
              const Globals& g) {
    if (p) {
        const std::uint64_t ord = multiplicative_order(*p, g.seed);
        if (g.format == Format::Json) {
            json j;
            j["p"] = *p;
            j["order"] = ord;
            print_json(out, j);
        } else {
            out << "ord_" << *p << "(2) = " << ord << '\n';
        }
        return kExitOk;
    }
    if (!x) throw DomainError("order: give --p or --x");
    const OrderMap map = order_map(*x, jobs);
    if (g.format == Format::Json) {
        json j = json::array();
        for (const auto& [m, b] : map) j.push_back({{"m", m}, {"primes", b.witnesses}});
        print_json(out, j);
    } else if (g.format == Format::Csv) {
        out << "m,primes\n";
        for (const auto& [m, b] : map) {
            out << m << ',';
            for (std::size_t i = 0; i < b.witnesses.size(); ++i) out << (i ? " " : "") << b.witnesses[i];
            out << '\n';
        }
    } else {
        for (const auto& [m, b] : map) {
            out << "m = " << m << ":";
            for (auto q : b.witnesses) out << ' ' << q;
            out << '\n';
        }
    }
    return kExitOk;
}

// survey ------------------------------------------------------------------

std::string text_table(const std::vector<SurveyRow>& rows) {
    std::ostringstream s;
    s << std::right << std::setw(3) << "k" << std::setw(12) << "phi_prime" << std::setw(12) << "psi_prime"
      << std::setw(16) << "psi_plus_prime" << std::setw(17) << "psi_minus_prime" << '\n';
    for (const auto& r : rows)
        s << std::setw(3) << r.k << std::setw(12) << r.count_phi_prime << std::setw(12) << r.count_psi_prime
          << std::setw(16) << r.count_psi_plus_prime << std::setw(17) << r.count_psi_minus_prime << '\n';
    return s.str();
}

std::optional<std::filesystem::path> store_path(const std::string& flag) {
    if (!flag.empty()) return std::filesystem::path(flag);
    if (const char* env = std::getenv(kStoreEnv); env && *env) return std::filesystem::path(env);
    return std::nullopt;
}

int cmd_survey(std::ostream& out, std::ostream& err, unsigned kmax, unsigned jobs, const std::string& resume,
               const PipelineConfig& config, const Globals& g, const std::atomic<bool>* cancel) {
    SurveyOptions opts;
    opts.config = config;
    opts.jobs = jobs;
    opts.store = store_path(resume);
    opts.cancel = cancel;
    const SurveyOutcome result = run_survey(kmax, opts);
    if (result.skipped_lines) err << "store: skipped " << result.skipped_lines << " incomplete trailing line\n";
    if (result.cancelled) {
        err << "interrupted after m = " << result.records.size() << "; rerun with the same store to resume\n";
        return kExitInterrupted;
    }
    switch (g.format) {
        case Format::Csv: out << emit_table(result.rows, TableFormat::Csv); break;
        case Format::Json: out << emit_table(result.rows, TableFormat::Json); break;
        case Format::Text: out << text_table(result.rows); break;
    }
    return kExitOk;
}

// validate ----------------------------------------------------------------

int cmd_validate(std::ostream& out, std::uint64_t bound, const std::string& store, const std::string& assets_dir,
                 unsigned jobs, const PipelineConfig& config, const Globals& g, const std::atomic<bool>* cancel) {
    const AppendixAssets assets =
        load_appendix_assets(assets_dir.empty() ? default_assets_dir() : std::filesystem::path(assets_dir));
    std::vector<ResultRecord> records;
    if (auto path = store_path(store); path && std::filesystem::exists(*path)) {
        records = load_store(*path).records;
    } else {
        unsigned k = 1;
        while ((std::uint64_t{1} << k) < bound) ++k;
        if (k > kMaxSurveyK) throw DomainError("validate: bound exceeds the survey range");
        SurveyOptions opts;
        opts.config = config;
        opts.jobs = jobs;
        opts.store = path;
        opts.cancel = cancel;
        SurveyOutcome o = run_survey(k, opts);
        if (o.cancelled) return kExitInterrupted;
        records = std::move(o.records);
    }
    const ValidationReport report = validate_appendix(bound, records, assets);
    if (g.format == Format::Json) {
        json j;
        j["bound"] = bound;
        j["ok"] = report.ok();
        for (const auto& c : report.lists) {
            j["lists"][std::string(to_string(c.list))] = {{"ok", c.ok()},
                                                          {"count", c.computed.size()},
                                                          {"expected_count", c.expected.size()},
                                                          {"missing", c.missing},
                                                          {"unexpected", c.unexpected}};
        }
        print_json(out, j);
    } else {
        for (const auto& c : report.lists) {
            out << (c.ok() ? "PASS " : "FAIL ") << to_string(c.list) << ": " << c.computed.size() << " computed, "
                << c.expected.size() << " expected (m <= " << bound << ")";
            if (!c.ok()) {
                out << "; missing";
                for (auto m : c.missing) out << ' ' << m;
                out << "; unexpected";
                for (auto m : c.unexpected) out << ' ' << m;
            }
            out << '\n';
        }
    }
    return report.ok() ? kExitOk : kExitCheckFailed;
}

// sophie ------------------------------------------------------------------

json certificate_json(const SophieGermainCertificate& c) {
    return {{"p", c.p},
            {"q", c.q},
            {"p_mod4", c.checks.p_mod4},
            {"q_mod8", c.checks.q_mod8},
            {"jacobi2q", c.checks.jacobi2q},
            {"divides", c.checks.divides},
            {"proper", c.checks.proper}};
}

int cmd_sophie(std::ostream& out, std::optional<std::uint64_t> p, std::uint64_t limit, const Globals& g) {
    std::vector<SophieGermainCertificate> certs;
    if (p)
        certs.push_back(sophie_germain_composite(*p));
    else
        certs = enumerate_sophie_germain(limit);
    if (g.format == Format::Json) {
        json j = json::array();
        for (const auto& c : certs) j.push_back(certificate_json(c));
        print_json(out, j);
    } else if (g.format == Format::Csv) {
        out << "p,q,p_mod4,q_mod8,jacobi2q,divides,proper\n";
        for (const auto& c : certs)
            out << c.p << ',' << c.q << ',' << c.checks.p_mod4 << ',' << c.checks.q_mod8 << ',' << c.checks.jacobi2q
                << ',' << c.checks.divides << ',' << c.checks.proper << '\n';
    } else {
        for (const auto& c : certs) out << c.q << " | 2^" << c.p << " - 1\n";
        out << certs.size() << " certificate(s)\n";
    }
    return kExitOk;
}

// census ------------------------------------------------------------------

int cmd_census(std::ostream& out, std::uint64_t x, const CensusConfig& config, const Globals& g) {
    const CensusResult r = composite_census(x, config);
    if (g.format == Format::Json) {
        json j;
        j["x"] = r.x;
        j["threshold"] = r.threshold;
        j["x_pow_theta"] = r.x_pow_theta;
        j["c1_composite_count"] = r.c1_composite_count;
        j["c2_not_two_prime_count"] = r.c2_not_two_prime_count;
        j["witnessed"] = json::array();
        for (const auto& w : r.witnessed)
            j["witnessed"].push_back({{"m", w.m}, {"p", w.p}, {"set", w.set == CensusSet::C1 ? "C1" : "C2"}});
        print_json(out, j);
    } else {
        out << "x = " << r.x << ", threshold = " << r.threshold << ", x^theta = " << r.x_pow_theta << '\n'
            << "C1 witnessed composites: " << r.c1_composite_count << '\n'
            << "C2 witnessed non-semiprimes: " << r.c2_not_two_prime_count << '\n';
        for (const auto& w : r.witnessed)
            out << "  " << (w.set == CensusSet::C1 ? "C1" : "C2") << " m = " << w.m << " witness " << w.p << '\n';
    }
    return kExitOk;
}

// density / constant-c ----------------------------------------------------

int cmd_density(std::ostream& out, std::optional<std::uint64_t> m, std::optional<unsigned> k, bool unfiltered,
                const Globals& g) {
    std::ostringstream num;
    num << std::setprecision(10);
    if (m) {
        const double d = density(*m);
        if (g.format == Format::Json)
            print_json(out, {{"m", *m}, {"density", d}});
        else
            out << "density(" << *m << ") = " << std::setprecision(10) << d << '\n';
        return kExitOk;
    }
    if (!k) throw DomainError("density: give --m or --k");
    const DensityReport r = density_sum(*k, !unfiltered);
    if (g.format == Format::Json) {
        print_json(out, {{"k", r.k},
                         {"index_set", std::string(to_string(r.index_set))},
                         {"sum", r.sum},
                         {"sum_over_k2", r.predicted_c_ratio}});
    } else {
        out << std::setprecision(10) << "k = " << r.k << " (" << to_string(r.index_set) << "): sum = " << r.sum
            << ", sum/k^2 = " << r.predicted_c_ratio << '\n';
    }
    return kExitOk;
}

int cmd_constant_c(std::ostream& out, const Globals& g) {
    const ConstantC c = constant_c();
    if (g.format == Format::Json) {
        print_json(out, {{"c", c.value},
                         {"lower", c.lower},
                         {"upper", c.upper},
                         {"zeta3_lower", c.zeta3_lower},
                         {"zeta3_upper", c.zeta3_upper},
                         {"zeta3_terms", c.zeta3_terms}});
    } else {
        out << std::setprecision(12) << "c = " << c.value << "  in [" << c.lower << ", " << c.upper << "]\n"
            << "zeta(3) in [" << c.zeta3_lower << ", " << c.zeta3_upper << "] from " << c.zeta3_terms
            << " terms\n";
    }
    return kExitOk;
}

// check -------------------------------------------------------------------

int cmd_check(std::ostream& out, const std::string& suite, const CheckParams& params, const Globals& g) {
    const CheckReport report = run_check_suite(suite, params);
    if (g.format == Format::Json) {
        json j;
        j["suite"] = report.suite;
        j["passed"] = report.passed();
        j["results"] = json::array();
        for (const auto& r : report.results)
            j["results"].push_back({{"name", r.name}, {"passed", r.passed}, {"detail", r.detail}});
        print_json(out, j);
    } else {
        for (const auto& r : report.results)
            out << (r.passed ? "PASS " : "FAIL ") << r.name << ": " << r.detail << '\n';
    }
    return report.passed() ? kExitOk : kExitCheckFailed;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err,
        const std::atomic<bool>* cancel) {
    CLI::App app{"Cyclotomic values Phi_m(2): primitive parts, Aurifeuillian splits, primality surveys", "cyclo"};
    app.require_subcommand(1);

    Globals g;
    std::string format = "text";
    app.add_option("--format", format, "Output format")
        ->check(CLI::IsMember({"text", "csv", "json"}))
        ->capture_default_str();
    app.add_flag("--full", g.full, "Print every digit of large values");
    app.add_option("--seed", g.seed, "Seed for randomized factorization")->capture_default_str();

    PipelineConfig config;
    auto add_pipeline = [&config](CLI::App* sc) {
        sc->add_option("--trial-bound", config.trial_bound, "Trial division bound")->capture_default_str();
    };

    std::uint64_t m = 0;
    auto* value = app.add_subcommand("value", "Show phi_m, delta_m, psi_m and the split halves");
    value->add_option("m,--m", m, "Index m >= 1")->required();

    std::uint64_t split_m = 0;
    auto* split = app.add_subcommand("split", "Aurifeuillian split of phi_m for m = 4 (mod 8)");
    split->add_option("m,--m", split_m, "Index m = 8k + 4")->required();

    std::optional<std::uint64_t> cls_m;
    std::string cls_n;
    auto* classify_cmd = app.add_subcommand("classify", "Classify phi_m, psi_m and the split halves, or an explicit integer");
    classify_cmd->add_option("--m", cls_m, "Index m (context for trial division when --n is given)");
    classify_cmd->add_option("--n", cls_n, "Decimal integer to classify");
    add_pipeline(classify_cmd);

    std::optional<std::uint64_t> ord_p, ord_x;
    unsigned jobs = 1;
    auto* order = app.add_subcommand("order", "Multiplicative order of 2 modulo p, or buckets of primes <= x");
    order->add_option("--p", ord_p, "Odd prime p");
    order->add_option("--x", ord_x, "Bucket every odd prime <= x");
    order->add_option("--jobs", jobs, "Worker threads")->capture_default_str();

    unsigned kmax = 10;
    std::string resume;
    auto* survey = app.add_subcommand("survey", "Counts of prime phi_m, psi_m, psi_m^+, psi_m^- for m <= 2^k");
    survey->add_option("--kmax", kmax, "Largest k (1..17)")->capture_default_str()->check(CLI::Range(1u, kMaxSurveyK));
    survey->add_option("--jobs", jobs, "Worker threads")->capture_default_str()->check(CLI::Range(1u, 1024u));
    survey->add_option("--resume", resume, std::string("Result store to write and resume (default $") + kStoreEnv + ")");
    add_pipeline(survey);

    std::uint64_t bound = 4096;
    std::string store, assets;
    auto* validate = app.add_subcommand("validate", "Compare survey m-lists with the appendix lists");
    validate->add_option("--bound", bound, "Compare m <= bound")->capture_default_str()->check(CLI::Range(std::uint64_t{1}, std::uint64_t{1} << kMaxSurveyK));
    validate->add_option("--store", store, "Existing result store (otherwise the survey is run)");
    validate->add_option("--assets", assets, "Directory with the appendix list files");
    validate->add_option("--jobs", jobs, "Worker threads")->capture_default_str();
    add_pipeline(validate);

    std::optional<std::uint64_t> sg_p;
    std::uint64_t sg_limit = 100;
    auto* sophie = app.add_subcommand("sophie", "Sophie-Germain divisors q = 2p + 1 of 2^p - 1");
    sophie->add_option("--p", sg_p, "Single prime p");
    sophie->add_option("--limit", sg_limit, "Enumerate p <= limit")->capture_default_str();

    std::uint64_t census_x = 1000;
    std::optional<std::uint64_t> census_override;
    std::int64_t theta_num = 3, theta_den = 5;
    auto* census = app.add_subcommand("census", "Witnessed composite psi_m from primes p <= x");
    census->add_option("--x", census_x, "Prime bound x >= 16")->capture_default_str();
    census->add_option("--override", census_override, "Replace the order threshold 5 sqrt(x) (ln x)^2");
    census->add_option("--theta-num", theta_num)->capture_default_str();
    census->add_option("--theta-den", theta_den)->capture_default_str();

    std::optional<std::uint64_t> dens_m;
    std::optional<unsigned> dens_k;
    bool unfiltered = false;
    auto* dens = app.add_subcommand("density", "Heuristic prime density for psi_m, or its partial sum");
    dens->add_option("--m", dens_m, "Single m >= 2");
    dens->add_option("--k", dens_k, "Sum over m <= 2^k")->check(CLI::Range(1u, 20u));
    dens->add_flag("--unfiltered", unfiltered, "Include m = 4 (mod 8)");

    auto* constc = app.add_subcommand("constant-c", "Evaluate the growth constant c with a zeta(3) bracket");

    std::string suite;
    CheckParams params;
    auto* check = app.add_subcommand("check", "Run an invariant suite");
    check->add_option("--suite", suite, "Suite name")->required()->check(CLI::IsMember(check_suite_names()));
    check->add_option("--limit", params.limit, "Range limit (suite default when omitted)");
    check->add_option("--z", params.z, "z for phi-ratio / small-totient");
    check->add_option("--slack", params.magnitude_slack, "Split magnitude slack in bits")->capture_default_str();
    add_pipeline(check);

    for (auto* sc : app.get_subcommands({})) sc->fallthrough();

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? kExitOk : kExitUsage;
    }
    g.format = format == "json" ? Format::Json : format == "csv" ? Format::Csv : Format::Text;
    set_rho_seed(g.seed);

    try {
        if (*value) return cmd_value(out, m, g);
        if (*split) return cmd_split(out, split_m, g);
        if (*classify_cmd) return cmd_classify(out, cls_m, cls_n, config, g);
        if (*order) return cmd_order(out, ord_p, ord_x, jobs, g);
        if (*survey) return cmd_survey(out, err, kmax, jobs, resume, config, g, cancel);
        if (*validate) return cmd_validate(out, bound, store, assets, jobs, config, g, cancel);
        if (*sophie) return cmd_sophie(out, sg_p, sg_limit, g);
        if (*census) {
            CensusConfig cc;
            cc.theta = {theta_num, theta_den};
            cc.threshold_override = census_override;
            return cmd_census(out, census_x, cc, g);
        }
        if (*dens) return cmd_density(out, dens_m, dens_k, unfiltered, g);
        if (*constc) return cmd_constant_c(out, g);
        if (*check) {
            params.config = config;
            return cmd_check(out, suite, params, g);
        }
    } catch (const InvariantViolation& e) {
        err << "invariant violation: " << e.what() << '\n';
        return kExitInvariant;
    } catch (const StoreError& e) {
        err << "store error: " << e.what() << '\n';
        return kExitIo;
    } catch (const DomainError& e) {
        err << "error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const ResourceError& e) {
        err << "error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const std::filesystem::filesystem_error& e) {
        err << "i/o error: " << e.what() << '\n';
        return kExitIo;
    }
    return kExitUsage;
}

}  // namespace cyclo::cli
