#pragma once

#include <compare>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace leakscope {

struct RawRecord {
    std::string source_uri;
    std::int64_t extracted_at = 0; // epoch seconds, UTC
    std::map<std::string, std::string> fields;
};

enum class EmploymentCategory { Contractor, Consultant, FullTime, Temporary, Unknown };

std::string_view employment_category_name(EmploymentCategory category);
EmploymentCategory employment_category_from_name(std::string_view name);

struct MonthDate {
    int year = 0;
    int month = 1;

    auto operator<=>(const MonthDate&) const = default;

    std::string to_string() const;

    // Ordered format list: YYYY-MM, "Mon YYYY", YYYY.
    static std::optional<MonthDate> parse(std::string_view s);
};

struct Experience {
    std::string title;
    std::string company;
    std::string location;
    std::optional<MonthDate> date_from;
    std::optional<MonthDate> date_to;
    std::string description;

    bool operator==(const Experience&) const = default;
};

// Pseudonymized analysis surface of one exported profile. Never carries the
// raw subject name.
struct Profile {
    std::string id;
    std::string subject_hash;
    std::string headline;
    std::string summary;
    std::vector<Experience> experiences;
    std::string region;
    EmploymentCategory employment_category = EmploymentCategory::Unknown;

    bool operator==(const Profile&) const = default;
};

// Count of non-empty fields; dedupe survivor selection.
std::size_t profile_completeness(const Profile& profile);

// The text surfaces scanned for disclosures and personality evidence:
// headline, summary, every experience description — in that order.
std::vector<std::string> profile_texts(const Profile& profile);

} // namespace leakscope
