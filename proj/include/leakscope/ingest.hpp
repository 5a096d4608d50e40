#pragma once

#include <cstddef>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "leakscope/profile.hpp"

namespace leakscope::ingest {

// Maps HTML class names onto record field names. The defaults match the
// export fixtures bundled under data/fixtures.
struct SelectorProfile {
    std::string card_class = "profile-card";
    std::string experience_class = "experience";
    // element class -> record field (top level of a card)
    std::map<std::string, std::string> card_fields = {
        {"name", "name"},         {"headline", "headline"}, {"summary", "summary"},
        {"region", "region"},     {"location", "region"},   {"category", "category"},
    };
    // element class -> experience sub-field
    std::map<std::string, std::string> experience_fields = {
        {"title", "title"},         {"company", "company"},   {"location", "location"},
        {"date-from", "date_from"}, {"date-to", "date_to"},   {"description", "description"},
    };
};

struct HtmlIngestResult {
    std::vector<RawRecord> records;
    std::size_t skipped = 0; // cards without a usable name field
};

// One RawRecord per profile card, in document order. Throws NotMarkup when
// the input has no tag structure at all.
HtmlIngestResult ingest_html_export(std::string_view document,
                                    std::string_view source_name,
                                    const SelectorProfile& selectors = {});

enum class TableFormat { CommaSeparated, TabSeparated };

// First row must name at least name, headline and summary columns. Throws
// MissingHeader / RowArityMismatch(row). Rows are 1-based including the
// header. Experience columns use dotted names: experience.0.title etc.
std::vector<RawRecord> ingest_table_file(std::string_view data,
                                         TableFormat format,
                                         std::string_view source_name);

struct NormalizeStats {
    std::size_t date_parse_failures = 0;
};

// Pseudonymizes and canonicalizes one record. `sequence` feeds the id
// (subject_hash prefix + corpus sequence number). Throws MissingField when
// the name or all of summary/experience are absent.
Profile normalize(const RawRecord& record,
                  std::string_view salt,
                  std::size_t sequence,
                  NormalizeStats* stats = nullptr);

std::vector<Profile> normalize_all(const std::vector<RawRecord>& records,
                                   std::string_view salt,
                                   NormalizeStats* stats = nullptr);

// Keyword inference used by normalize and by the wrangle consistency rule.
EmploymentCategory infer_employment_category(std::string_view text);

} // namespace leakscope::ingest
