#pragma once

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

#include "leakscope/profile.hpp"

namespace leakscope::scan {

enum class DisclosureCategory {
    InternalSensitive,
    IctInfrastructure,
    SensitiveRole,
    PersonalJobLinked,
};

enum class Impact { Low, High };

std::string_view category_name(DisclosureCategory category);
DisclosureCategory category_from_name(std::string_view name);
std::string_view impact_name(Impact impact);
Impact impact_from_name(std::string_view name);

struct LeakRule {
    std::string id;
    DisclosureCategory category;
    Impact impact;
    std::string pattern; // case-insensitive whole-token phrase
    std::string note;
};

struct Evidence {
    std::string field;
    std::size_t begin = 0;
    std::size_t end = 0;
    std::string quote; // exact slice [begin, end) of the named field

    bool operator==(const Evidence&) const = default;
};

struct DisclosureFinding {
    std::string profile_id;
    std::string rule_id;
    DisclosureCategory category;
    Impact impact;
    Evidence evidence;

    bool operator==(const DisclosureFinding&) const = default;
};

struct RiskLabel {
    Impact value = Impact::Low;
    std::vector<std::string> rationale; // contributing High rule ids
};

// Parses the shipped ruleset format: one rule per line,
// id <TAB> category <TAB> impact <TAB> pattern <TAB> note.
// '#' comments and blank lines are skipped. Throws SchemaError(line).
std::vector<LeakRule> parse_ruleset(std::string_view data);

// Scans headline, summary and every experience description. One finding per
// (rule, non-overlapping match), ordered by (field, offset, rule_id).
// Throws DuplicateRuleId.
std::vector<DisclosureFinding> classify_profile(const Profile& profile,
                                                const std::vector<LeakRule>& rules);

// High iff any finding has High impact. Throws MixedProfileIds.
RiskLabel assign_risk(const std::vector<DisclosureFinding>& findings);

struct CorpusRiskSummary {
    std::size_t events = 0;    // profiles with >= 1 finding
    std::size_t incidents = 0; // profiles with a High risk label
    int low_share_pct = 0;     // over events, half away from zero
    int high_share_pct = 0;
};

CorpusRiskSummary corpus_risk_summary(const std::vector<Profile>& profiles,
                                      const std::vector<DisclosureFinding>& findings);

// Shared integer-percent rounding (half away from zero).
int percent_of(std::size_t part, std::size_t whole);

} // namespace leakscope::scan
