#pragma once

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

#include "leakscope/profile.hpp"

namespace leakscope::wrangle {

enum class AnomalyKind { UnexpectedValue, IncorrectValue, InconsistentValue, DuplicateCandidate };
enum class ProposedAction { Fix, Remove, Keep };

std::string_view anomaly_kind_name(AnomalyKind kind);
std::string_view proposed_action_name(ProposedAction action);

struct Anomaly {
    std::string profile_id;
    AnomalyKind kind;
    std::string field;
    std::string detail;
    ProposedAction proposed_action;

    bool operator==(const Anomaly&) const = default;
};

struct WranglingReport {
    std::size_t input_count = 0;
    std::vector<Anomaly> anomalies;
    std::size_t fixed = 0;
    std::size_t removed = 0;
    std::size_t output_count = 0;
};

// Deterministic anomaly detection: empty summary+experiences (Unexpected,
// Remove), reversed dates (Incorrect, Fix), employment category inconsistent
// with experience titles (Inconsistent, Remove), shared subject_hash
// (DuplicateCandidate, Keep — dedupe resolves those).
std::vector<Anomaly> inspect(const std::vector<Profile>& profiles);

struct CleanResult {
    std::vector<Profile> profiles;
    WranglingReport report;
};

// Applies Fix and Remove actions. Throws UnknownProfileId when an anomaly
// references a profile that is not in the input.
CleanResult clean(const std::vector<Profile>& profiles, const std::vector<Anomaly>& anomalies);

// One survivor per subject_hash: most complete, ties to the lowest id.
// Output sorted by id; idempotent.
std::vector<Profile> dedupe(const std::vector<Profile>& profiles);

struct VerificationResult {
    bool passed = true;
    std::vector<std::string> failures;
};

VerificationResult verify(const std::vector<Profile>& before,
                          const std::vector<Profile>& after,
                          const WranglingReport& report);

} // namespace leakscope::wrangle
