#include "leakscope/leakscan.hpp"

#include "leakscope/error.hpp"
#include "leakscope/textutil.hpp"

#include <algorithm>
#include <map>
#include <set>

namespace leakscope::scan {

std::string_view category_name(DisclosureCategory category) {
    switch (category) {
    case DisclosureCategory::InternalSensitive: return "internal_sensitive";
    case DisclosureCategory::IctInfrastructure: return "ict_infrastructure";
    case DisclosureCategory::SensitiveRole: return "sensitive_role";
    case DisclosureCategory::PersonalJobLinked: return "personal_job_linked";
    }
    return "internal_sensitive";
}

DisclosureCategory category_from_name(std::string_view name) {
    if (name == "internal_sensitive") return DisclosureCategory::InternalSensitive;
    if (name == "ict_infrastructure") return DisclosureCategory::IctInfrastructure;
    if (name == "sensitive_role") return DisclosureCategory::SensitiveRole;
    if (name == "personal_job_linked") return DisclosureCategory::PersonalJobLinked;
    throw Error(ErrorCode::SchemaError, "unknown disclosure category \"" + std::string(name) + "\"");
}

std::string_view impact_name(Impact impact) {
    return impact == Impact::High ? "high" : "low";
}

Impact impact_from_name(std::string_view name) {
    if (name == "high") return Impact::High;
    if (name == "low") return Impact::Low;
    throw Error(ErrorCode::SchemaError, "unknown impact \"" + std::string(name) + "\"");
}

namespace {

Impact default_impact(DisclosureCategory category) {
    switch (category) {
    case DisclosureCategory::InternalSensitive:
    case DisclosureCategory::IctInfrastructure:
        return Impact::High;
    case DisclosureCategory::SensitiveRole:
    case DisclosureCategory::PersonalJobLinked:
        return Impact::Low;
    }
    return Impact::Low;
}

std::vector<std::string> split_tabs(std::string_view line) {
    std::vector<std::string> cells;
    std::size_t start = 0;
    while (true) {
        std::size_t tab = line.find('\t', start);
        if (tab == std::string_view::npos) {
            cells.emplace_back(line.substr(start));
            break;
        }
        cells.emplace_back(line.substr(start, tab - start));
        start = tab + 1;
    }
    return cells;
}

} // namespace

std::vector<LeakRule> parse_ruleset(std::string_view data) {
    std::vector<LeakRule> rules;
    std::set<std::string> seen_ids;
    std::size_t line_no = 0;
    std::size_t pos = 0;
    while (pos <= data.size()) {
        std::size_t nl = data.find('\n', pos);
        std::string_view line =
            nl == std::string_view::npos ? data.substr(pos) : data.substr(pos, nl - pos);
        pos = nl == std::string_view::npos ? data.size() + 1 : nl + 1;
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
        if (line.empty() || line[0] == '#') continue;

        auto cells = split_tabs(line);
        if (cells.size() < 4 || cells.size() > 5)
            throw Error(ErrorCode::SchemaError,
                        "rule line needs 4 or 5 tab-separated fields, got " +
                            std::to_string(cells.size()),
                        static_cast<long long>(line_no));

        LeakRule rule;
        rule.id = text::canonicalize(cells[0]);
        std::string category_text = text::to_lower_ascii(text::canonicalize(cells[1]));
        std::string impact_text = text::to_lower_ascii(text::canonicalize(cells[2]));
        rule.pattern = text::canonicalize(cells[3]);
        rule.note = cells.size() == 5 ? text::canonicalize(cells[4]) : std::string();

        if (rule.id.empty())
            throw Error(ErrorCode::SchemaError, "rule id is empty",
                        static_cast<long long>(line_no));
        try {
            rule.category = category_from_name(category_text);
            rule.impact = impact_text.empty() ? default_impact(rule.category)
                                              : impact_from_name(impact_text);
        } catch (const Error& e) {
            throw Error(ErrorCode::SchemaError, e.what(), static_cast<long long>(line_no));
        }
        if (rule.pattern.empty() || text::pattern_tokens(rule.pattern).empty())
            throw Error(ErrorCode::SchemaError, "rule pattern is empty",
                        static_cast<long long>(line_no));
        if (!seen_ids.insert(rule.id).second)
            throw Error(ErrorCode::DuplicateRuleId, "duplicate rule id \"" + rule.id + "\"",
                        static_cast<long long>(line_no));
        rules.push_back(std::move(rule));
    }
    return rules;
}

std::vector<DisclosureFinding> classify_profile(const Profile& profile,
                                                const std::vector<LeakRule>& rules) {
    {
        std::set<std::string_view> ids;
        for (const auto& rule : rules)
            if (!ids.insert(rule.id).second)
                throw Error(ErrorCode::DuplicateRuleId, "duplicate rule id \"" + rule.id + "\"");
    }

    // Field scan order fixed: headline, summary, experience descriptions.
    std::vector<std::pair<std::string, const std::string*>> fields;
    fields.emplace_back("headline", &profile.headline);
    fields.emplace_back("summary", &profile.summary);
    for (std::size_t n = 0; n < profile.experiences.size(); ++n)
        fields.emplace_back("experience." + std::to_string(n) + ".description",
                            &profile.experiences[n].description);

    std::vector<DisclosureFinding> findings;
    for (std::size_t f = 0; f < fields.size(); ++f) {
        const std::string& value = *fields[f].second;
        if (value.empty()) continue;
        auto tokens = text::tokenize(value);
        std::vector<DisclosureFinding> per_field;
        for (const auto& rule : rules) {
            auto pattern = text::pattern_tokens(rule.pattern);
            for (const auto& match : text::find_phrase(tokens, pattern)) {
                DisclosureFinding finding;
                finding.profile_id = profile.id;
                finding.rule_id = rule.id;
                finding.category = rule.category;
                finding.impact = rule.impact;
                finding.evidence.field = fields[f].first;
                finding.evidence.begin = match.begin;
                finding.evidence.end = match.end;
                finding.evidence.quote = value.substr(match.begin, match.end - match.begin);
                per_field.push_back(std::move(finding));
            }
        }
        std::stable_sort(per_field.begin(), per_field.end(),
                         [](const DisclosureFinding& a, const DisclosureFinding& b) {
                             if (a.evidence.begin != b.evidence.begin)
                                 return a.evidence.begin < b.evidence.begin;
                             return a.rule_id < b.rule_id;
                         });
        findings.insert(findings.end(), per_field.begin(), per_field.end());
    }
    return findings;
}

RiskLabel assign_risk(const std::vector<DisclosureFinding>& findings) {
    RiskLabel label;
    for (const auto& finding : findings) {
        if (finding.profile_id != findings.front().profile_id)
            throw Error(ErrorCode::MixedProfileIds,
                        "findings span profiles \"" + findings.front().profile_id + "\" and \"" +
                            finding.profile_id + "\"");
        if (finding.impact == Impact::High) {
            label.value = Impact::High;
            if (std::find(label.rationale.begin(), label.rationale.end(), finding.rule_id) ==
                label.rationale.end())
                label.rationale.push_back(finding.rule_id);
        }
    }
    return label;
}

int percent_of(std::size_t part, std::size_t whole) {
    if (whole == 0) return 0;
    // integer percent, half away from zero
    return static_cast<int>((part * 200 + whole) / (2 * whole));
}

CorpusRiskSummary corpus_risk_summary(const std::vector<Profile>& profiles,
                                      const std::vector<DisclosureFinding>& findings) {
    std::set<std::string> ids;
    for (const auto& profile : profiles) ids.insert(profile.id);

    std::map<std::string, std::vector<DisclosureFinding>> by_profile;
    for (const auto& finding : findings) {
        if (!ids.contains(finding.profile_id)) continue; // stale findings are not counted
        by_profile[finding.profile_id].push_back(finding);
    }

    CorpusRiskSummary summary;
    summary.events = by_profile.size();
    for (const auto& [id, profile_findings] : by_profile) {
        if (assign_risk(profile_findings).value == Impact::High) ++summary.incidents;
    }
    if (summary.events > 0) {
        summary.high_share_pct = percent_of(summary.incidents, summary.events);
        summary.low_share_pct = percent_of(summary.events - summary.incidents, summary.events);
    }
    return summary;
}

} // namespace leakscope::scan
