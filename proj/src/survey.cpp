#include "cyclo/survey.hpp"

#include "cyclo/errors.hpp"

#include <json.hpp>

#include <algorithm>
#include <cctype>
#include <chrono>
#include <condition_variable>
#include <cstdlib>
#include <fstream>
#include <map>
#include <mutex>
#include <sstream>
#include <thread>

#ifndef CYCLO_ASSETS_DIR
#define CYCLO_ASSETS_DIR "data/appendix"
#endif

namespace cyclo {

using json = nlohmann::ordered_json;

bool ResultRecord::same_result(const ResultRecord& o) const {
    return m == o.m && phi_bits == o.phi_bits && delta == o.delta && class_phi == o.class_phi &&
           class_psi == o.class_psi && class_psi_plus == o.class_psi_plus &&
           class_psi_minus == o.class_psi_minus && witness == o.witness;
}

ResultRecord survey_record(const CyclotomicRecord& rec, const Classifier& classifier) {
    const auto start = std::chrono::steady_clock::now();
    ResultRecord r;
    r.m = rec.m;
    r.phi_bits = bit_length(rec.phi);
    r.delta = rec.delta;

    const std::optional<std::uint64_t> ctx = rec.m >= 2 ? std::optional(rec.m) : std::nullopt;
    const Classification psi = classifier.classify(rec.psi, ctx);
    r.class_psi = psi.tag;
    r.witness = psi.witness;
    // Intrinsic factors are not 1 mod m, so phi_m is classified without the
    // primitive-candidate restriction when delta_m > 1.
    r.class_phi = rec.delta == 1 ? psi.tag : classifier.classify(rec.phi).tag;

    if (rec.split) {
        auto half_class = [&](const BigNat& half) {
            if (half == rec.psi) return psi.tag;
            return classifier.classify(half, ctx).tag;
        };
        r.class_psi_plus = half_class(rec.split->psi_plus);
        r.class_psi_minus = half_class(rec.split->psi_minus);
    }
    r.elapsed_ms = static_cast<std::uint64_t>(
        std::chrono::duration_cast<std::chrono::milliseconds>(std::chrono::steady_clock::now() - start)
            .count());
    return r;
}

ResultRecord survey_record(std::uint64_t m, const Classifier& classifier) {
    return survey_record(cyclotomic_record(m), classifier);
}

std::vector<SurveyRow> rows_from_records(const std::vector<ResultRecord>& records, unsigned k_max) {
    const std::uint64_t top = std::uint64_t{1} << k_max;
    if (records.size() < top)
        throw DomainError("rows_from_records: records do not cover m <= 2^" + std::to_string(k_max));
    std::vector<SurveyRow> rows;
    SurveyRow acc;
    unsigned k = 1;
    for (std::uint64_t i = 0; i < top; ++i) {
        const ResultRecord& r = records[i];
        if (r.m != i + 1) throw DomainError("rows_from_records: records are not consecutive from m = 1");
        acc.count_phi_prime += is_prime_tag(r.class_phi);
        acc.count_psi_prime += is_prime_tag(r.class_psi);
        acc.count_psi_plus_prime += r.class_psi_plus && is_prime_tag(*r.class_psi_plus);
        acc.count_psi_minus_prime += r.class_psi_minus && is_prime_tag(*r.class_psi_minus);
        if (r.m == (std::uint64_t{1} << k)) {
            acc.k = k++;
            rows.push_back(acc);
        }
    }
    return rows;
}

// --- store ---------------------------------------------------------------

std::string encode_record(const ResultRecord& r) {
    json j;
    j["m"] = r.m;
    j["phi_bits"] = r.phi_bits;
    j["delta"] = r.delta;
    j["class_phi"] = to_string(r.class_phi);
    j["class_psi"] = to_string(r.class_psi);
    if (r.class_psi_plus) j["class_psi_plus"] = to_string(*r.class_psi_plus);
    if (r.class_psi_minus) j["class_psi_minus"] = to_string(*r.class_psi_minus);
    if (r.witness) j["witness"] = to_decimal(*r.witness);
    j["elapsed_ms"] = r.elapsed_ms;
    return j.dump();
}

ResultRecord decode_record(std::string_view line, std::size_t line_no) {
    try {
        const json j = json::parse(line);
        ResultRecord r;
        r.m = j.at("m").get<std::uint64_t>();
        r.phi_bits = j.at("phi_bits").get<std::uint64_t>();
        r.delta = j.at("delta").get<std::uint64_t>();
        r.class_phi = class_tag_from_string(j.at("class_phi").get<std::string>());
        r.class_psi = class_tag_from_string(j.at("class_psi").get<std::string>());
        if (j.contains("class_psi_plus"))
            r.class_psi_plus = class_tag_from_string(j["class_psi_plus"].get<std::string>());
        if (j.contains("class_psi_minus"))
            r.class_psi_minus = class_tag_from_string(j["class_psi_minus"].get<std::string>());
        if (j.contains("witness")) r.witness = parse_decimal(j["witness"].get<std::string>());
        r.elapsed_ms = j.at("elapsed_ms").get<std::uint64_t>();
        if (r.m == 0) throw DomainError("m must be >= 1");
        if (r.class_psi_plus.has_value() != (r.m % 8 == 4) || r.class_psi_minus.has_value() != (r.m % 8 == 4))
            throw DomainError("split classes must be present iff m = 4 (mod 8)");
        return r;
    } catch (const StoreError&) {
        throw;
    } catch (const std::exception& e) {
        throw StoreError(std::string("malformed store record: ") + e.what(), line_no);
    }
}

StoreContents load_store(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw StoreError("cannot open store " + path.string());
    std::ostringstream ss;
    ss << in.rdbuf();
    const std::string data = ss.str();

    StoreContents out;
    std::size_t pos = 0, line_no = 0;
    while (pos < data.size()) {
        const std::size_t nl = data.find('\n', pos);
        ++line_no;
        if (nl == std::string::npos) {
            out.skipped_lines = 1;
            break;
        }
        ResultRecord r = decode_record(std::string_view(data).substr(pos, nl - pos), line_no);
        if (r.m != out.records.size() + 1)
            throw StoreError("expected m = " + std::to_string(out.records.size() + 1) + ", found m = " +
                                 std::to_string(r.m),
                             line_no);
        out.records.push_back(std::move(r));
        pos = nl + 1;
        out.valid_bytes = pos;
    }
    return out;
}

StoreWriter::StoreWriter(const std::filesystem::path& path, std::uintmax_t truncate_to) : path_(path) {
    std::error_code ec;
    if (std::filesystem::exists(path, ec)) {
        std::filesystem::resize_file(path, truncate_to, ec);
        if (ec) throw StoreError("cannot truncate store " + path.string() + ": " + ec.message());
    }
    file_ = std::fopen(path.c_str(), "ab");
    if (!file_) throw StoreError("cannot open store " + path.string() + " for append");
}

StoreWriter::~StoreWriter() {
    if (file_) std::fclose(file_);
}

void StoreWriter::append(const ResultRecord& r) {
    const std::string line = encode_record(r) + "\n";
    if (std::fwrite(line.data(), 1, line.size(), file_) != line.size() || std::fflush(file_) != 0)
        throw StoreError("write to store " + path_.string() + " failed");
}

// --- driver --------------------------------------------------------------

SurveyOutcome run_survey(unsigned k_max, const SurveyOptions& options) {
    if (k_max < 1 || k_max > kMaxSurveyK)
        throw DomainError("run_survey: k_max must be in [1, " + std::to_string(kMaxSurveyK) + "]");
    const std::uint64_t top = std::uint64_t{1} << k_max;

    SurveyOutcome out;
    std::uintmax_t keep_bytes = 0;
    if (options.store && std::filesystem::exists(*options.store)) {
        StoreContents contents = load_store(*options.store);
        out.skipped_lines = contents.skipped_lines;
        keep_bytes = contents.valid_bytes;
        out.records = std::move(contents.records);
        if (out.records.size() > top) out.records.resize(top);
        out.resumed_from = out.records.size();
    }

    std::optional<StoreWriter> writer;
    if (options.store && out.records.size() < top) writer.emplace(*options.store, keep_bytes);

    const Classifier classifier(options.config);
    const std::uint64_t first = out.records.size() + 1;
    const std::size_t pending = static_cast<std::size_t>(top - first + 1);
    std::vector<std::optional<ResultRecord>> slots(pending);
    std::mutex mu;
    std::condition_variable cv;
    std::atomic<std::uint64_t> next{0};
    unsigned active = std::max(1u, options.jobs);
    std::exception_ptr failure;

    auto cancelled = [&] { return options.cancel && options.cancel->load(); };
    auto worker = [&] {
        for (;;) {
            const std::uint64_t i = next.fetch_add(1);
            if (i >= pending || cancelled()) break;
            {
                std::lock_guard lock(mu);
                if (failure) break;
            }
            try {
                ResultRecord r = survey_record(first + i, classifier);
                std::lock_guard lock(mu);
                slots[i] = std::move(r);
            } catch (...) {
                std::lock_guard lock(mu);
                if (!failure) failure = std::current_exception();
            }
            cv.notify_all();
        }
        std::lock_guard lock(mu);
        --active;
        cv.notify_all();
    };

    std::vector<std::jthread> pool;
    for (unsigned t = 0, n = active; t < n; ++t) pool.emplace_back(worker);

    // Single writer: emit strictly in ascending m.
    for (std::size_t emitted = 0; emitted < pending;) {
        std::unique_lock lock(mu);
        cv.wait(lock, [&] { return slots[emitted].has_value() || active == 0 || failure; });
        if (failure) break;
        if (!slots[emitted]) break;  // workers stopped early
        ResultRecord r = std::move(*slots[emitted]);
        slots[emitted].reset();
        lock.unlock();
        if (writer) writer->append(r);
        if (options.on_record) options.on_record(r);
        out.records.push_back(std::move(r));
        ++emitted;
    }
    pool.clear();
    if (failure) std::rethrow_exception(failure);

    out.cancelled = out.records.size() < top;
    if (!out.cancelled) out.rows = rows_from_records(out.records, k_max);
    return out;
}

// --- appendix ------------------------------------------------------------

std::string_view to_string(AppendixList l) {
    switch (l) {
        case AppendixList::PhiPrime: return "phi_prime";
        case AppendixList::PsiLtPhiPrime: return "psi_lt_phi_prime";
        case AppendixList::PsiPlusPrime: return "psi_plus_prime";
        case AppendixList::PsiMinusPrime: return "psi_minus_prime";
    }
    return "?";
}

std::string_view asset_file_name(AppendixList l) {
    switch (l) {
        case AppendixList::PhiPrime: return "phi_prime.txt";
        case AppendixList::PsiLtPhiPrime: return "psi_lt_phi_prime.txt";
        case AppendixList::PsiPlusPrime: return "psi_plus_prime.txt";
        case AppendixList::PsiMinusPrime: return "psi_minus_prime.txt";
    }
    return "?";
}

const std::vector<std::uint64_t>& AppendixAssets::list(AppendixList l) const {
    switch (l) {
        case AppendixList::PhiPrime: return phi_prime;
        case AppendixList::PsiLtPhiPrime: return psi_lt_phi_prime;
        case AppendixList::PsiPlusPrime: return psi_plus_prime;
        case AppendixList::PsiMinusPrime: break;
    }
    return psi_minus_prime;
}

std::vector<std::uint64_t> parse_int_list(std::string_view text) {
    std::vector<std::uint64_t> out;
    std::size_t i = 0;
    while (i < text.size()) {
        const unsigned char c = static_cast<unsigned char>(text[i]);
        if (std::isspace(c) || c == ',') {
            ++i;
            continue;
        }
        if (!std::isdigit(c)) throw DomainError(std::string("unexpected character '") + text[i] + "' in list");
        std::uint64_t v = 0;
        while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i])))
            v = v * 10 + static_cast<std::uint64_t>(text[i++] - '0');
        if (!out.empty() && v <= out.back()) throw DomainError("list is not strictly ascending at " + std::to_string(v));
        out.push_back(v);
    }
    return out;
}

AppendixAssets load_appendix_assets(const std::filesystem::path& dir) {
    auto read = [&dir](AppendixList l) {
        const auto path = dir / asset_file_name(l);
        std::ifstream in(path);
        if (!in) throw StoreError("cannot open asset file " + path.string());
        std::ostringstream ss;
        ss << in.rdbuf();
        return parse_int_list(ss.str());
    };
    AppendixAssets a;
    a.phi_prime = read(AppendixList::PhiPrime);
    a.psi_lt_phi_prime = read(AppendixList::PsiLtPhiPrime);
    a.psi_plus_prime = read(AppendixList::PsiPlusPrime);
    a.psi_minus_prime = read(AppendixList::PsiMinusPrime);
    return a;
}

std::filesystem::path default_assets_dir() {
    if (const char* env = std::getenv("CYCLO_ASSETS"); env && *env) return env;
    return CYCLO_ASSETS_DIR;
}

std::vector<std::uint64_t> computed_list(const std::vector<ResultRecord>& records, AppendixList l,
                                         std::uint64_t bound) {
    std::vector<std::uint64_t> out;
    for (const auto& r : records) {
        if (r.m > bound) continue;
        bool member = false;
        switch (l) {
            case AppendixList::PhiPrime: member = is_prime_tag(r.class_phi); break;
            case AppendixList::PsiLtPhiPrime: member = r.delta > 1 && is_prime_tag(r.class_psi); break;
            case AppendixList::PsiPlusPrime: member = r.class_psi_plus && is_prime_tag(*r.class_psi_plus); break;
            case AppendixList::PsiMinusPrime:
                member = r.class_psi_minus && is_prime_tag(*r.class_psi_minus);
                break;
        }
        if (member) out.push_back(r.m);
    }
    std::sort(out.begin(), out.end());
    return out;
}

bool ValidationReport::ok() const {
    return std::all_of(lists.begin(), lists.end(), [](const ListComparison& c) { return c.ok(); });
}

ValidationReport validate_appendix(std::uint64_t bound, const std::vector<ResultRecord>& records,
                                   const AppendixAssets& assets) {
    std::vector<bool> seen(bound + 1, false);
    for (const auto& r : records)
        if (r.m <= bound) seen[r.m] = true;
    for (std::uint64_t m = 1; m <= bound; ++m)
        if (!seen[m]) throw DomainError("validate_appendix: no result for m = " + std::to_string(m));

    ValidationReport report;
    report.bound = bound;
    for (AppendixList l : kAppendixLists) {
        ListComparison c{l, computed_list(records, l, bound), {}, {}, {}};
        for (std::uint64_t m : assets.list(l))
            if (m <= bound) c.expected.push_back(m);
        std::set_difference(c.expected.begin(), c.expected.end(), c.computed.begin(), c.computed.end(),
                            std::back_inserter(c.missing));
        std::set_difference(c.computed.begin(), c.computed.end(), c.expected.begin(), c.expected.end(),
                            std::back_inserter(c.unexpected));
        report.lists.push_back(std::move(c));
    }
    return report;
}

std::string emit_table(const std::vector<SurveyRow>& rows, TableFormat format) {
    if (rows.empty()) throw DomainError("emit_table: no rows");
    if (format == TableFormat::Csv) {
        std::string out = "k,phi_prime,psi_prime,psi_plus_prime,psi_minus_prime\n";
        for (const auto& r : rows) {
            out += std::to_string(r.k) + ',' + std::to_string(r.count_phi_prime) + ',' +
                   std::to_string(r.count_psi_prime) + ',' + std::to_string(r.count_psi_plus_prime) + ',' +
                   std::to_string(r.count_psi_minus_prime) + '\n';
        }
        return out;
    }
    json arr = json::array();
    for (const auto& r : rows) {
        json o;
        o["k"] = r.k;
        o["phi_prime"] = r.count_phi_prime;
        o["psi_prime"] = r.count_psi_prime;
        o["psi_plus_prime"] = r.count_psi_plus_prime;
        o["psi_minus_prime"] = r.count_psi_minus_prime;
        arr.push_back(std::move(o));
    }
    return arr.dump(2) + "\n";
}

}  // namespace cyclo
