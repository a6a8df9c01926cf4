#pragma once

// Prime-count survey over m <= 2^k: classify phi_m, psi_m and the
// Aurifeuillian psi halves, stream one record per m to an append-only store,
// and check the resulting m-lists against the bundled reference lists.

#include "cyclo/cyclotomic.hpp"
#include "cyclo/primality.hpp"

#include <atomic>
#include <cstdio>
#include <cstdint>
#include <filesystem>
#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace cyclo {

inline constexpr unsigned kMaxSurveyK = 17;

struct ResultRecord {
    std::uint64_t m = 0;
    std::uint64_t phi_bits = 0;
    std::uint64_t delta = 1;
    ClassTag class_phi = ClassTag::Unit;
    ClassTag class_psi = ClassTag::Unit;
    std::optional<ClassTag> class_psi_plus;
    std::optional<ClassTag> class_psi_minus;
    std::optional<BigNat> witness;  // nontrivial factor of psi_m when one was found
    std::uint64_t elapsed_ms = 0;

    // Equality over the computed content; elapsed_ms is timing only.
    bool same_result(const ResultRecord& o) const;
};

struct SurveyRow {
    unsigned k = 0;
    std::uint64_t count_phi_prime = 0;
    std::uint64_t count_psi_prime = 0;
    std::uint64_t count_psi_plus_prime = 0;
    std::uint64_t count_psi_minus_prime = 0;
    friend bool operator==(const SurveyRow&, const SurveyRow&) = default;
};

// Classifies everything for one m.
ResultRecord survey_record(std::uint64_t m, const Classifier& classifier);
ResultRecord survey_record(const CyclotomicRecord& rec, const Classifier& classifier);

// Cumulative counts at each k = 1..k_max. Records must cover 1..2^k_max.
std::vector<SurveyRow> rows_from_records(const std::vector<ResultRecord>& records, unsigned k_max);

// --- result store --------------------------------------------------------

std::string encode_record(const ResultRecord& r);
ResultRecord decode_record(std::string_view line, std::size_t line_no);

struct StoreContents {
    std::vector<ResultRecord> records;
    std::size_t skipped_lines = 0;   // unterminated trailing line dropped
    std::uintmax_t valid_bytes = 0;  // length of the well-formed prefix
};

// Records must be consecutive from m = 1. A malformed terminated line or a
// gap in m raises StoreError naming the line; an unterminated final line is
// treated as an interrupted write and skipped.
StoreContents load_store(const std::filesystem::path& path);

// Single-writer, append-only, flushed per record.
class StoreWriter {
public:
    StoreWriter(const std::filesystem::path& path, std::uintmax_t truncate_to);
    ~StoreWriter();
    StoreWriter(const StoreWriter&) = delete;
    StoreWriter& operator=(const StoreWriter&) = delete;

    void append(const ResultRecord& r);

private:
    std::filesystem::path path_;
    std::FILE* file_ = nullptr;
};

// --- survey driver -------------------------------------------------------

struct SurveyOptions {
    PipelineConfig config;
    unsigned jobs = 1;
    std::optional<std::filesystem::path> store;  // resumed if it already exists
    const std::atomic<bool>* cancel = nullptr;   // stop scheduling when set
    std::function<void(const ResultRecord&)> on_record;  // newly computed records only, ascending m
};

struct SurveyOutcome {
    std::vector<SurveyRow> rows;
    std::vector<ResultRecord> records;  // ascending m, including resumed ones
    std::uint64_t resumed_from = 0;     // last m already present in the store
    std::size_t skipped_lines = 0;
    bool cancelled = false;
};

SurveyOutcome run_survey(unsigned k_max, const SurveyOptions& options = {});

// --- appendix validation -------------------------------------------------

enum class AppendixList { PhiPrime, PsiLtPhiPrime, PsiPlusPrime, PsiMinusPrime };

inline constexpr AppendixList kAppendixLists[] = {AppendixList::PhiPrime, AppendixList::PsiLtPhiPrime,
                                                  AppendixList::PsiPlusPrime, AppendixList::PsiMinusPrime};

std::string_view to_string(AppendixList l);
std::string_view asset_file_name(AppendixList l);

struct AppendixAssets {
    std::vector<std::uint64_t> phi_prime;
    std::vector<std::uint64_t> psi_lt_phi_prime;
    std::vector<std::uint64_t> psi_plus_prime;
    std::vector<std::uint64_t> psi_minus_prime;

    const std::vector<std::uint64_t>& list(AppendixList l) const;
};

// Comma/whitespace separated, strictly ascending. DomainError otherwise.
std::vector<std::uint64_t> parse_int_list(std::string_view text);
AppendixAssets load_appendix_assets(const std::filesystem::path& dir);

// Directory of the bundled asset files (compile-time default, overridable by
// the CYCLO_ASSETS environment variable).
std::filesystem::path default_assets_dir();

// m-list a survey produced for the given list.
std::vector<std::uint64_t> computed_list(const std::vector<ResultRecord>& records, AppendixList l,
                                         std::uint64_t bound);

struct ListComparison {
    AppendixList list;
    std::vector<std::uint64_t> computed;
    std::vector<std::uint64_t> expected;
    std::vector<std::uint64_t> missing;     // expected but not computed
    std::vector<std::uint64_t> unexpected;  // computed but not expected
    bool ok() const { return missing.empty() && unexpected.empty(); }
};

struct ValidationReport {
    std::uint64_t bound = 0;
    std::vector<ListComparison> lists;
    bool ok() const;
};

// DomainError when records do not cover every m <= bound.
ValidationReport validate_appendix(std::uint64_t bound, const std::vector<ResultRecord>& records,
                                   const AppendixAssets& assets);

// --- presentation --------------------------------------------------------

enum class TableFormat { Csv, Json };

// Columns k, phi_prime, psi_prime, psi_plus_prime, psi_minus_prime.
std::string emit_table(const std::vector<SurveyRow>& rows, TableFormat format);

}  // namespace cyclo
