#include "leakscope/analytics.hpp"

#include "leakscope/error.hpp"

#include <algorithm>

namespace leakscope::analytics {

std::string_view hypothesis_id_name(HypothesisId id) {
    switch (id) {
    case HypothesisId::H1: return "H1";
    case HypothesisId::H2: return "H2";
    case HypothesisId::H3: return "H3";
    case HypothesisId::H4: return "H4";
    }
    return "H1";
}

std::string_view expected_risk_name(ExpectedRisk expected) {
    return expected == ExpectedRisk::HighRisk ? "high_risk" : "low_risk";
}

std::string_view verdict_name(Verdict verdict) {
    switch (verdict) {
    case Verdict::Supported: return "Supported";
    case Verdict::Refuted: return "Refuted";
    case Verdict::Inconclusive: return "Inconclusive";
    }
    return "Inconclusive";
}

std::vector<GroupStats> build_incident_table(
    const std::vector<Profile>& profiles,
    const std::vector<scan::DisclosureFinding>& findings,
    const std::map<std::string, persona::DiscScores>& personas) {
    std::map<std::string, std::vector<scan::DisclosureFinding>> by_profile;
    for (const auto& profile : profiles) {
        // seed empty buckets so only corpus profiles count
        by_profile.emplace(profile.id, std::vector<scan::DisclosureFinding>{});
    }
    for (const auto& finding : findings) {
        auto it = by_profile.find(finding.profile_id);
        if (it != by_profile.end()) it->second.push_back(finding);
    }

    std::vector<GroupStats> table;
    table.reserve(persona::kAllTraits.size());
    for (persona::Trait trait : persona::kAllTraits) table.push_back({trait, 0, 0, 0, 0.0});

    std::size_t total_incidents = 0;
    for (const auto& [id, profile_findings] : by_profile) {
        if (profile_findings.empty()) continue; // not an event
        auto persona_it = personas.find(id);
        if (persona_it == personas.end())
            throw Error(ErrorCode::MissingPersona, id);

        auto slot = static_cast<std::size_t>(
            std::find(persona::kAllTraits.begin(), persona::kAllTraits.end(),
                      persona_it->second.dominant) -
            persona::kAllTraits.begin());
        ++table[slot].events;
        if (scan::assign_risk(profile_findings).value == scan::Impact::High) {
            ++table[slot].incidents;
            ++total_incidents;
        }
    }

    for (auto& row : table) {
        row.incident_share_pct =
            total_incidents > 0 ? scan::percent_of(row.incidents, total_incidents) : 0;
        row.incidence_rate =
            row.events > 0 ? static_cast<double>(row.incidents) / static_cast<double>(row.events)
                           : 0.0;
    }
    return table;
}

namespace {

// Fixed tie order C, D, I, S for the four DISC groups, then alphabetical for
// any other label.
int tie_rank(const std::string& label) {
    if (label == "C") return 0;
    if (label == "D") return 1;
    if (label == "I") return 2;
    if (label == "S") return 3;
    return 4;
}

} // namespace

ParetoReport pareto_analysis(const std::vector<ParetoItem>& items, double threshold) {
    if (!(threshold > 0.0 && threshold <= 1.0))
        throw Error(ErrorCode::BadThreshold,
                    "threshold " + std::to_string(threshold) + " outside (0, 1]");

    ParetoReport report;
    report.threshold = threshold;

    for (const auto& item : items) report.total_incidents += item.incidents;

    std::vector<ParetoItem> ranked;
    for (const auto& item : items)
        if (item.incidents > 0) ranked.push_back(item);
    std::sort(ranked.begin(), ranked.end(), [](const ParetoItem& a, const ParetoItem& b) {
        if (a.incidents != b.incidents) return a.incidents > b.incidents;
        int ra = tie_rank(a.label), rb = tie_rank(b.label);
        if (ra != rb) return ra < rb;
        return a.label < b.label;
    });

    std::size_t running = 0;
    bool reached = false;
    for (const auto& item : ranked) {
        running += item.incidents;
        report.ordering.push_back(item.label);
        report.cumulative_share.push_back(static_cast<double>(running) /
                                          static_cast<double>(report.total_incidents));
        if (!reached) {
            report.vital_few.push_back(item.label);
            if (report.cumulative_share.back() + 1e-12 >= threshold) reached = true;
        }
    }
    if (!reached) report.vital_few.clear(); // all-zero table: nothing to select
    return report;
}

ParetoReport pareto_analysis(const std::vector<GroupStats>& table, double threshold) {
    std::vector<ParetoItem> items;
    items.reserve(table.size());
    for (const auto& row : table)
        items.push_back({std::string(persona::trait_name(row.group)), row.incidents});
    return pareto_analysis(items, threshold);
}

std::vector<HypothesisOutcome> evaluate_hypotheses(const std::vector<GroupStats>& table) {
    std::size_t total_events = 0;
    std::size_t total_incidents = 0;
    for (const auto& row : table) {
        total_events += row.events;
        total_incidents += row.incidents;
    }
    double mean_rate = total_events > 0
                           ? static_cast<double>(total_incidents) / static_cast<double>(total_events)
                           : 0.0;

    const std::pair<HypothesisId, std::pair<persona::Trait, ExpectedRisk>> plan[] = {
        {HypothesisId::H1, {persona::Trait::D, ExpectedRisk::HighRisk}},
        {HypothesisId::H2, {persona::Trait::I, ExpectedRisk::HighRisk}},
        {HypothesisId::H3, {persona::Trait::S, ExpectedRisk::LowRisk}},
        {HypothesisId::H4, {persona::Trait::C, ExpectedRisk::LowRisk}},
    };

    std::vector<HypothesisOutcome> outcomes;
    for (const auto& [id, spec] : plan) {
        auto [trait, expected] = spec;
        HypothesisOutcome outcome;
        outcome.id = id;
        outcome.group = trait;
        outcome.expected = expected;
        outcome.corpus_mean_rate = mean_rate;

        auto row_it = std::find_if(table.begin(), table.end(),
                                   [&](const GroupStats& row) { return row.group == trait; });
        if (row_it == table.end() || row_it->events == 0) {
            outcome.verdict = Verdict::Inconclusive;
        } else {
            outcome.observed_rate = row_it->incidence_rate;
            bool supported = expected == ExpectedRisk::HighRisk
                                 ? outcome.observed_rate > mean_rate
                                 : outcome.observed_rate < mean_rate;
            outcome.verdict = supported ? Verdict::Supported : Verdict::Refuted;
        }
        outcomes.push_back(outcome);
    }
    return outcomes;
}

} // namespace leakscope::analytics
