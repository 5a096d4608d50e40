#include "doctest.h"

#include <algorithm>

#include "leakscope/error.hpp"
#include "leakscope/wrangle.hpp"

#include "helpers.hpp"

using namespace leakscope;
using testutil::make_profile;

namespace {

Profile with_dates(Profile p, const char* from, const char* to) {
    Experience exp;
    exp.title = "Engineer";
    exp.description = "worked on things";
    exp.date_from = MonthDate::parse(from);
    exp.date_to = MonthDate::parse(to);
    p.experiences.push_back(std::move(exp));
    return p;
}

} // namespace

TEST_CASE("inspect of empty input is empty") {
    CHECK(wrangle::inspect({}).empty());
}

TEST_CASE("inspect flags reversed dates as Incorrect/Fix") {
    auto p = with_dates(make_profile("aa-000001", "h1"), "2020-05", "2019-01");
    auto anomalies = wrangle::inspect({p});
    REQUIRE(anomalies.size() == 1);
    CHECK(anomalies[0].kind == wrangle::AnomalyKind::IncorrectValue);
    CHECK(anomalies[0].field == "experience.0.date_from");
    CHECK(anomalies[0].proposed_action == wrangle::ProposedAction::Fix);
    CHECK(anomalies[0].profile_id == "aa-000001");
}

TEST_CASE("inspect flags empty summary and experiences as Unexpected/Remove") {
    auto p = make_profile("aa-000001", "h1", "");
    auto anomalies = wrangle::inspect({p});
    REQUIRE(anomalies.size() == 1);
    CHECK(anomalies[0].kind == wrangle::AnomalyKind::UnexpectedValue);
    CHECK(anomalies[0].proposed_action == wrangle::ProposedAction::Remove);
}

TEST_CASE("inspect flags category inconsistent with experience titles") {
    auto p = make_profile("aa-000001", "h1");
    p.employment_category = EmploymentCategory::FullTime;
    Experience exp;
    exp.title = "Independent contractor";
    exp.description = "gigs";
    p.experiences.push_back(exp);
    auto anomalies = wrangle::inspect({p});
    REQUIRE(anomalies.size() == 1);
    CHECK(anomalies[0].kind == wrangle::AnomalyKind::InconsistentValue);
    CHECK(anomalies[0].proposed_action == wrangle::ProposedAction::Remove);
}

TEST_CASE("inspect raises one DuplicateCandidate per sharing profile") {
    auto a = make_profile("aa-000001", "same");
    auto b = make_profile("ab-000002", "same");
    auto anomalies = wrangle::inspect({a, b});
    REQUIRE(anomalies.size() == 2);
    for (const auto& anomaly : anomalies) {
        CHECK(anomaly.kind == wrangle::AnomalyKind::DuplicateCandidate);
        CHECK(anomaly.proposed_action == wrangle::ProposedAction::Keep);
    }
    CHECK(anomalies[0].profile_id == "aa-000001");
    CHECK(anomalies[1].profile_id == "ab-000002");
}

TEST_CASE("clean with no anomalies changes nothing") {
    std::vector<Profile> profiles = {make_profile("aa-000001", "h1"),
                                     make_profile("ab-000002", "h2")};
    auto result = wrangle::clean(profiles, {});
    CHECK(result.profiles == profiles);
    CHECK(result.report.input_count == 2);
    CHECK(result.report.fixed == 0);
    CHECK(result.report.removed == 0);
    CHECK(result.report.output_count == 2);
}

TEST_CASE("clean applies the date-swap fix") {
    auto p = with_dates(make_profile("aa-000001", "h1"), "2020-05", "2019-01");
    auto anomalies = wrangle::inspect({p});
    auto result = wrangle::clean({p}, anomalies);
    REQUIRE(result.profiles.size() == 1);
    CHECK(result.report.fixed == 1);
    CHECK(result.profiles[0].experiences[0].date_from->to_string() == "2019-01");
    CHECK(result.profiles[0].experiences[0].date_to->to_string() == "2020-05");
    // idempotent from here: nothing left to flag
    CHECK(wrangle::inspect(result.profiles).empty());
}

TEST_CASE("clean removes profiles named by Remove anomalies") {
    std::vector<Profile> profiles;
    for (int i = 0; i < 10; ++i)
        profiles.push_back(make_profile("aa-00000" + std::to_string(i), "h" + std::to_string(i)));
    profiles[3].summary.clear();
    profiles[7].summary.clear();
    auto result = wrangle::clean(profiles, wrangle::inspect(profiles));
    CHECK(result.profiles.size() == 8);
    CHECK(result.report.removed == 2);
    CHECK(result.report.output_count == result.report.input_count - result.report.removed);
}

TEST_CASE("clean rejects anomalies for unknown profiles") {
    wrangle::Anomaly bogus{"zz-999999", wrangle::AnomalyKind::UnexpectedValue, "summary",
                           "missing", wrangle::ProposedAction::Remove};
    try {
        wrangle::clean({make_profile("aa-000001", "h1")}, {bogus});
        FAIL("expected UnknownProfileId");
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::UnknownProfileId);
    }
}

TEST_CASE("dedupe keeps unique lists as-is and is idempotent") {
    std::vector<Profile> profiles = {make_profile("ab-000002", "h2"),
                                     make_profile("aa-000001", "h1")};
    auto once = wrangle::dedupe(profiles);
    REQUIRE(once.size() == 2);
    CHECK(once[0].id == "aa-000001"); // sorted by id
    CHECK(wrangle::dedupe(once) == once);
    CHECK(wrangle::dedupe({}).empty());
}

TEST_CASE("dedupe keeps the most complete copy, ties to the lowest id") {
    auto sparse = make_profile("aa-000001", "same");
    auto full = make_profile("ab-000002", "same");
    full.headline = "has a headline too";
    full.region = "North Area";
    auto survivors = wrangle::dedupe({sparse, full});
    REQUIRE(survivors.size() == 1);
    CHECK(survivors[0].id == "ab-000002");

    auto twin = make_profile("ab-000002", "same");
    auto lower = make_profile("aa-000001", "same");
    survivors = wrangle::dedupe({twin, lower});
    REQUIRE(survivors.size() == 1);
    CHECK(survivors[0].id == "aa-000001");
}

TEST_CASE("dedupe is permutation-insensitive") {
    std::vector<Profile> profiles = {make_profile("aa-000001", "x"),
                                     make_profile("ab-000002", "x"),
                                     make_profile("ac-000003", "y")};
    auto forward = wrangle::dedupe(profiles);
    std::reverse(profiles.begin(), profiles.end());
    CHECK(wrangle::dedupe(profiles) == forward);
}

TEST_CASE("verify passes on a clean then dedupe output") {
    std::vector<Profile> profiles = {make_profile("aa-000001", "h1"),
                                     make_profile("ab-000002", "h1"),
                                     make_profile("ac-000003", "h3")};
    profiles[2].summary.clear();
    auto cleaned = wrangle::clean(profiles, wrangle::inspect(profiles));
    auto unique = wrangle::dedupe(cleaned.profiles);
    auto result = wrangle::verify(profiles, unique, cleaned.report);
    CHECK(result.passed);
    CHECK(result.failures.empty());
}

TEST_CASE("verify fails when a duplicate pair survives") {
    std::vector<Profile> after = {make_profile("aa-000001", "same"),
                                  make_profile("ab-000002", "same")};
    wrangle::WranglingReport report;
    report.input_count = 2;
    report.output_count = 2;
    auto result = wrangle::verify(after, after, report);
    CHECK_FALSE(result.passed);
    bool mentions_duplicate = false;
    for (const auto& failure : result.failures)
        if (failure.find("DuplicateCandidate") != std::string::npos) mentions_duplicate = true;
    CHECK(mentions_duplicate);
}

TEST_CASE("verify fails when the report counts do not reconcile") {
    std::vector<Profile> profiles = {make_profile("aa-000001", "h1")};
    wrangle::WranglingReport report;
    report.input_count = 1;
    report.removed = 0;
    report.output_count = 5;
    auto result = wrangle::verify(profiles, profiles, report);
    CHECK_FALSE(result.passed);
}

TEST_CASE("verify fails when a removable anomaly would be re-raised") {
    auto empty = make_profile("aa-000001", "h1", "");
    wrangle::WranglingReport report;
    report.input_count = 1;
    report.output_count = 1;
    auto result = wrangle::verify({empty}, {empty}, report);
    CHECK_FALSE(result.passed);
}

TEST_CASE("anomaly kind and action names") {
    CHECK(wrangle::anomaly_kind_name(wrangle::AnomalyKind::UnexpectedValue) ==
          "UnexpectedValue");
    CHECK(wrangle::anomaly_kind_name(wrangle::AnomalyKind::DuplicateCandidate) ==
          "DuplicateCandidate");
    CHECK(wrangle::proposed_action_name(wrangle::ProposedAction::Fix) == "Fix");
}
