#include "doctest.h"

#include <map>

#include "leakscope/corpus_io.hpp"
#include "leakscope/error.hpp"
#include "leakscope/leakscan.hpp"

#include "helpers.hpp"

using namespace leakscope;
using testutil::make_profile;

namespace {

std::vector<scan::LeakRule> shipped_rules() {
    static auto rules =
        scan::parse_ruleset(io::read_file(testutil::data_path("data/leak_rules.tsv")));
    return rules;
}

} // namespace

TEST_CASE("profile with no text has no findings") {
    auto p = make_profile("aa-000001", "h1", "");
    CHECK(scan::classify_profile(p, shipped_rules()).empty());
}

TEST_CASE("infrastructure mentions classify as IctInfrastructure") {
    auto p = make_profile("aa-000001", "h1",
                          "managed migration of our internal SAP ERP and the perimeter "
                          "firewall rule base");
    auto findings = scan::classify_profile(p, shipped_rules());
    REQUIRE(findings.size() == 3);
    bool saw_sap = false, saw_firewall = false;
    for (const auto& f : findings) {
        CHECK(f.category == scan::DisclosureCategory::IctInfrastructure);
        CHECK(f.impact == scan::Impact::High);
        CHECK(f.evidence.field == "summary");
        if (f.evidence.quote == "SAP") saw_sap = true;
        if (f.evidence.quote == "firewall") saw_firewall = true;
    }
    CHECK(saw_sap);
    CHECK(saw_firewall);
}

TEST_CASE("classified merger experience classifies as InternalSensitive High") {
    auto p = make_profile("aa-000001", "h1");
    Experience exp;
    exp.title = "Manager";
    exp.description = "working on a classified merger project";
    p.experiences.push_back(exp);
    auto findings = scan::classify_profile(p, shipped_rules());
    REQUIRE(findings.size() == 1);
    CHECK(findings[0].category == scan::DisclosureCategory::InternalSensitive);
    CHECK(findings[0].impact == scan::Impact::High);
    CHECK(findings[0].evidence.field == "experience.0.description");
    CHECK(findings[0].evidence.quote == "merger");
}

TEST_CASE("evidence offsets reproduce the quoted slice exactly") {
    auto p = make_profile("aa-000001", "h1",
                          "Privileged access granted; daily commute posted openly.");
    auto findings = scan::classify_profile(p, shipped_rules());
    REQUIRE(findings.size() == 2);
    for (const auto& f : findings) {
        CHECK(p.summary.substr(f.evidence.begin, f.evidence.end - f.evidence.begin) ==
              f.evidence.quote);
    }
    // deterministic ordering by offset within the field
    CHECK(findings[0].evidence.begin < findings[1].evidence.begin);
    CHECK(findings[0].rule_id == "sr-001");
    CHECK(findings[1].rule_id == "pjl-001");
    CHECK(findings[1].impact == scan::Impact::Low);
}

TEST_CASE("matching is whole-token, so substrings do not fire") {
    auto p = make_profile("aa-000001", "h1", "the sapling by the firewalls of time");
    CHECK(scan::classify_profile(p, shipped_rules()).empty());
}

TEST_CASE("rule order does not affect the finding order") {
    auto rules = shipped_rules();
    auto p = make_profile("aa-000001", "h1", "vpn then sap then a merger");
    auto forward = scan::classify_profile(p, rules);
    std::reverse(rules.begin(), rules.end());
    CHECK(scan::classify_profile(p, rules) == forward);
}

TEST_CASE("duplicate rule ids are rejected") {
    auto rules = shipped_rules();
    rules.push_back(rules.front());
    auto p = make_profile("aa-000001", "h1");
    try {
        scan::classify_profile(p, rules);
        FAIL("expected DuplicateRuleId");
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::DuplicateRuleId);
    }
}

TEST_CASE("ruleset parsing applies category default impacts and overrides") {
    auto rules = shipped_rules();
    REQUIRE(rules.size() == 22);
    std::map<std::string, scan::LeakRule> by_id;
    for (const auto& r : rules) by_id[r.id] = r;
    CHECK(by_id.at("is-001").impact == scan::Impact::High);
    CHECK(by_id.at("ict-003").impact == scan::Impact::High);
    CHECK(by_id.at("sr-001").impact == scan::Impact::Low);
    CHECK(by_id.at("sr-006").impact == scan::Impact::High); // explicit override
    CHECK(by_id.at("pjl-001").impact == scan::Impact::Low);
}

TEST_CASE("ruleset schema errors carry line numbers") {
    try {
        scan::parse_ruleset("only\ttwo\n");
        FAIL("expected SchemaError");
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::SchemaError);
        CHECK(e.position() == 1);
    }
    try {
        scan::parse_ruleset("r1\tinternal_sensitive\thigh\tpat\tnote\n"
                            "r1\tinternal_sensitive\thigh\tother\tnote\n");
        FAIL("expected DuplicateRuleId");
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::DuplicateRuleId);
    }
    CHECK_THROWS_AS(scan::parse_ruleset("r1\tno_such_category\thigh\tpat\tnote\n"), Error);
    CHECK_THROWS_AS(scan::parse_ruleset("r1\tinternal_sensitive\thigh\t\tnote\n"), Error);
}

TEST_CASE("assign_risk follows the any-High rule") {
    CHECK(scan::assign_risk({}).value == scan::Impact::Low);
    CHECK(scan::assign_risk({}).rationale.empty());

    scan::DisclosureFinding low;
    low.profile_id = "aa-000001";
    low.rule_id = "pjl-001";
    low.category = scan::DisclosureCategory::PersonalJobLinked;
    low.impact = scan::Impact::Low;
    auto only_lows = scan::assign_risk({low, low, low});
    CHECK(only_lows.value == scan::Impact::Low);
    CHECK(only_lows.rationale.empty());

    auto high = low;
    high.rule_id = "is-002";
    high.impact = scan::Impact::High;
    auto label = scan::assign_risk({low, high});
    CHECK(label.value == scan::Impact::High);
    CHECK(label.rationale == std::vector<std::string>{"is-002"});
}

TEST_CASE("assign_risk rejects findings from different profiles") {
    scan::DisclosureFinding a, b;
    a.profile_id = "aa-000001";
    b.profile_id = "ab-000002";
    try {
        scan::assign_risk({a, b});
        FAIL("expected MixedProfileIds");
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::MixedProfileIds);
    }
}

TEST_CASE("percent rounding is half away from zero") {
    CHECK(scan::percent_of(49, 120) == 41);
    CHECK(scan::percent_of(71, 120) == 59);
    CHECK(scan::percent_of(31, 49) == 63);
    CHECK(scan::percent_of(9, 49) == 18);
    CHECK(scan::percent_of(3, 49) == 6);
    CHECK(scan::percent_of(6, 49) == 12);
    CHECK(scan::percent_of(1, 200) == 1);  // 0.5% rounds up
    CHECK(scan::percent_of(1, 201) == 0);  // just below half
    CHECK(scan::percent_of(0, 7) == 0);
    CHECK(scan::percent_of(7, 7) == 100);
}

TEST_CASE("corpus risk summary over a constructed corpus") {
    std::vector<Profile> profiles;
    std::vector<scan::DisclosureFinding> findings;
    auto add = [&](int n, bool event, bool incident) {
        for (int k = 0; k < n; ++k) {
            auto id = "p" + std::to_string(profiles.size());
            profiles.push_back(make_profile(id, "h" + id));
            if (event) {
                scan::DisclosureFinding f;
                f.profile_id = id;
                f.rule_id = incident ? "is-002" : "pjl-001";
                f.impact = incident ? scan::Impact::High : scan::Impact::Low;
                findings.push_back(f);
            }
        }
    };
    add(49, true, true);
    add(71, true, false);
    add(350, false, false);
    auto summary = scan::corpus_risk_summary(profiles, findings);
    CHECK(summary.events == 120);
    CHECK(summary.incidents == 49);
    CHECK(summary.high_share_pct == 41);
    CHECK(summary.low_share_pct == 59);
}

TEST_CASE("corpus risk summary with zero events") {
    auto summary = scan::corpus_risk_summary({make_profile("aa-000001", "h1")}, {});
    CHECK(summary.events == 0);
    CHECK(summary.incidents == 0);
    CHECK(summary.high_share_pct == 0);
    CHECK(summary.low_share_pct == 0);
}

TEST_CASE("category and impact names round-trip") {
    for (auto category :
         {scan::DisclosureCategory::InternalSensitive, scan::DisclosureCategory::IctInfrastructure,
          scan::DisclosureCategory::SensitiveRole, scan::DisclosureCategory::PersonalJobLinked}) {
        CHECK(scan::category_from_name(scan::category_name(category)) == category);
    }
    CHECK(scan::impact_from_name("high") == scan::Impact::High);
    CHECK(scan::impact_from_name("low") == scan::Impact::Low);
    CHECK_THROWS_AS(scan::category_from_name("bogus"), Error);
}

TEST_CASE("findings jsonl round-trips") {
    auto p = make_profile("aa-000001", "h1", "sap and a merger and privileged access");
    auto findings = scan::classify_profile(p, shipped_rules());
    REQUIRE(!findings.empty());
    auto back = io::findings_from_jsonl(io::findings_to_jsonl(findings));
    CHECK(back == findings);
}
