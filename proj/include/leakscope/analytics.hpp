#pragma once

#include <cstddef>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "leakscope/leakscan.hpp"
#include "leakscope/persona.hpp"
#include "leakscope/profile.hpp"

namespace leakscope::analytics {

struct GroupStats {
    persona::Trait group = persona::Trait::D;
    std::size_t events = 0;
    std::size_t incidents = 0;
    int incident_share_pct = 0;  // incidents / total incidents, integer percent
    double incidence_rate = 0.0; // incidents / events, 0 when no events

    bool operator==(const GroupStats&) const = default;
};

// Joins disclosure findings with DISC groups. Rows come back in fixed
// D, I, S, C order. Throws MissingPersona when an event profile has no
// scores entry.
std::vector<GroupStats> build_incident_table(
    const std::vector<Profile>& profiles,
    const std::vector<scan::DisclosureFinding>& findings,
    const std::map<std::string, persona::DiscScores>& personas);

struct ParetoItem {
    std::string label;
    std::size_t incidents = 0;
};

struct ParetoReport {
    std::vector<std::string> ordering;     // incident count descending, zero rows dropped
    std::vector<double> cumulative_share;  // aligned with ordering
    std::vector<std::string> vital_few;    // minimal prefix reaching the threshold
    double threshold = 0.8;
    std::size_t total_incidents = 0;

    bool operator==(const ParetoReport&) const = default;
};

// Ranks causes by contribution and selects the minimal vital-few prefix.
// Ties break by the fixed group order C, D, I, S, then alphabetically.
// Throws BadThreshold outside (0, 1].
ParetoReport pareto_analysis(const std::vector<ParetoItem>& items, double threshold);

ParetoReport pareto_analysis(const std::vector<GroupStats>& table, double threshold);

enum class HypothesisId { H1, H2, H3, H4 };
enum class ExpectedRisk { HighRisk, LowRisk };
enum class Verdict { Supported, Refuted, Inconclusive };

std::string_view hypothesis_id_name(HypothesisId id);
std::string_view expected_risk_name(ExpectedRisk expected);
std::string_view verdict_name(Verdict verdict);

struct HypothesisOutcome {
    HypothesisId id = HypothesisId::H1;
    persona::Trait group = persona::Trait::D;
    ExpectedRisk expected = ExpectedRisk::HighRisk;
    double observed_rate = 0.0;
    double corpus_mean_rate = 0.0;
    Verdict verdict = Verdict::Inconclusive;

    bool operator==(const HypothesisOutcome&) const = default;
};

// H1: D high-risk, H2: I high-risk, H3: S low-risk, H4: C low-risk, judged
// against the corpus mean incidence rate with strict comparisons. A group
// without events is Inconclusive.
std::vector<HypothesisOutcome> evaluate_hypotheses(const std::vector<GroupStats>& table);

} // namespace leakscope::analytics
