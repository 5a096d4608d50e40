#include "leakscope/wrangle.hpp"

#include "leakscope/error.hpp"
#include "leakscope/ingest.hpp"

#include <algorithm>
#include <map>
#include <set>

namespace leakscope::wrangle {

std::string_view anomaly_kind_name(AnomalyKind kind) {
    switch (kind) {
    case AnomalyKind::UnexpectedValue: return "UnexpectedValue";
    case AnomalyKind::IncorrectValue: return "IncorrectValue";
    case AnomalyKind::InconsistentValue: return "InconsistentValue";
    case AnomalyKind::DuplicateCandidate: return "DuplicateCandidate";
    }
    return "UnexpectedValue";
}

std::string_view proposed_action_name(ProposedAction action) {
    switch (action) {
    case ProposedAction::Fix: return "Fix";
    case ProposedAction::Remove: return "Remove";
    case ProposedAction::Keep: return "Keep";
    }
    return "Keep";
}

std::vector<Anomaly> inspect(const std::vector<Profile>& profiles) {
    std::map<std::string, std::size_t> hash_count;
    for (const auto& profile : profiles) ++hash_count[profile.subject_hash];

    std::vector<Anomaly> anomalies;
    for (const auto& profile : profiles) {
        if (profile.summary.empty() && profile.experiences.empty()) {
            anomalies.push_back({profile.id, AnomalyKind::UnexpectedValue, "summary",
                                 "no summary and no experiences", ProposedAction::Remove});
        }

        for (std::size_t n = 0; n < profile.experiences.size(); ++n) {
            const Experience& exp = profile.experiences[n];
            if (exp.date_from && exp.date_to && *exp.date_from > *exp.date_to) {
                anomalies.push_back({profile.id, AnomalyKind::IncorrectValue,
                                     "experience." + std::to_string(n) + ".date_from",
                                     "date_from " + exp.date_from->to_string() + " after date_to " +
                                         exp.date_to->to_string(),
                                     ProposedAction::Fix});
            }
        }

        if (profile.employment_category != EmploymentCategory::Unknown) {
            for (std::size_t n = 0; n < profile.experiences.size(); ++n) {
                EmploymentCategory from_title =
                    ingest::infer_employment_category(profile.experiences[n].title);
                if (from_title != EmploymentCategory::Unknown &&
                    from_title != profile.employment_category) {
                    anomalies.push_back(
                        {profile.id, AnomalyKind::InconsistentValue,
                         "experience." + std::to_string(n) + ".title",
                         "title implies " + std::string(employment_category_name(from_title)) +
                             " but category is " +
                             std::string(employment_category_name(profile.employment_category)),
                         ProposedAction::Remove});
                    break;
                }
            }
        }

        if (hash_count[profile.subject_hash] > 1) {
            anomalies.push_back({profile.id, AnomalyKind::DuplicateCandidate, "subject_hash",
                                 "subject_hash shared by " +
                                     std::to_string(hash_count[profile.subject_hash]) +
                                     " profiles",
                                 ProposedAction::Keep});
        }
    }
    return anomalies;
}

CleanResult clean(const std::vector<Profile>& profiles, const std::vector<Anomaly>& anomalies) {
    std::map<std::string, std::size_t> index_by_id;
    for (std::size_t i = 0; i < profiles.size(); ++i) index_by_id.emplace(profiles[i].id, i);

    CleanResult result;
    result.profiles = profiles;
    result.report.input_count = profiles.size();
    result.report.anomalies = anomalies;

    std::set<std::string> to_remove;
    for (const auto& anomaly : anomalies) {
        auto it = index_by_id.find(anomaly.profile_id);
        if (it == index_by_id.end())
            throw Error(ErrorCode::UnknownProfileId,
                        "anomaly references unknown profile \"" + anomaly.profile_id + "\"");
        if (anomaly.proposed_action == ProposedAction::Remove) to_remove.insert(anomaly.profile_id);
    }

    for (const auto& anomaly : anomalies) {
        if (anomaly.proposed_action != ProposedAction::Fix) continue;
        if (to_remove.contains(anomaly.profile_id)) continue;
        Profile& profile = result.profiles[index_by_id[anomaly.profile_id]];

        // the only fixable anomaly: reversed date range on experience N
        if (anomaly.kind == AnomalyKind::IncorrectValue &&
            anomaly.field.rfind("experience.", 0) == 0) {
            std::size_t n = std::stoul(anomaly.field.substr(11));
            if (n < profile.experiences.size()) {
                Experience& exp = profile.experiences[n];
                std::swap(exp.date_from, exp.date_to);
                ++result.report.fixed;
            }
        }
    }

    if (!to_remove.empty()) {
        std::erase_if(result.profiles,
                      [&](const Profile& p) { return to_remove.contains(p.id); });
    }
    result.report.removed = to_remove.size();
    result.report.output_count = result.profiles.size();
    return result;
}

std::vector<Profile> dedupe(const std::vector<Profile>& profiles) {
    std::map<std::string, const Profile*> survivors;
    for (const auto& profile : profiles) {
        auto [it, inserted] = survivors.emplace(profile.subject_hash, &profile);
        if (inserted) continue;
        const Profile* current = it->second;
        std::size_t new_score = profile_completeness(profile);
        std::size_t cur_score = profile_completeness(*current);
        if (new_score > cur_score || (new_score == cur_score && profile.id < current->id))
            it->second = &profile;
    }

    std::vector<Profile> out;
    out.reserve(survivors.size());
    for (const auto& [hash, profile] : survivors) out.push_back(*profile);
    std::sort(out.begin(), out.end(),
              [](const Profile& a, const Profile& b) { return a.id < b.id; });
    return out;
}

VerificationResult verify(const std::vector<Profile>& before,
                          const std::vector<Profile>& after,
                          const WranglingReport& report) {
    VerificationResult result;
    auto fail = [&](std::string message) {
        result.passed = false;
        result.failures.push_back(std::move(message));
    };

    if (report.output_count != report.input_count - report.removed)
        fail("report invariant breached: output_count " + std::to_string(report.output_count) +
             " != input_count " + std::to_string(report.input_count) + " - removed " +
             std::to_string(report.removed));
    if (report.input_count != before.size())
        fail("report input_count " + std::to_string(report.input_count) +
             " does not match the before-corpus size " + std::to_string(before.size()));

    for (const auto& anomaly : inspect(after)) {
        if (anomaly.proposed_action == ProposedAction::Remove)
            fail(std::string(anomaly_kind_name(anomaly.kind)) + " re-raised on " +
                 anomaly.profile_id + " (" + anomaly.detail + ")");
    }

    auto sorted_after = after;
    std::sort(sorted_after.begin(), sorted_after.end(),
              [](const Profile& a, const Profile& b) { return a.id < b.id; });
    auto deduped = dedupe(after);
    if (deduped != sorted_after) {
        std::map<std::string, std::size_t> hash_count;
        for (const auto& profile : after) ++hash_count[profile.subject_hash];
        for (const auto& profile : after) {
            if (hash_count[profile.subject_hash] > 1)
                fail("DuplicateCandidate survived dedupe: " + profile.id);
        }
        if (result.passed) fail("DuplicateCandidate: dedupe(after) differs from after");
    }
    return result;
}

} // namespace leakscope::wrangle
