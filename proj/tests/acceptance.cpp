// Acceptance harness: exercises the end-to-end guarantees and prints one
// PASS/FAIL line per criterion. Exit code is the number of failures.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <map>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "leakscope/analytics.hpp"
#include "leakscope/corpus_io.hpp"
#include "leakscope/digest.hpp"
#include "leakscope/dork.hpp"
#include "leakscope/error.hpp"
#include "leakscope/ingest.hpp"
#include "leakscope/leakscan.hpp"
#include "leakscope/persona.hpp"
#include "leakscope/report.hpp"
#include "leakscope/rng.hpp"
#include "leakscope/synth.hpp"
#include "leakscope/textutil.hpp"
#include "leakscope/wrangle.hpp"

using namespace leakscope;

namespace {

std::string g_detail;

void detail(const std::string& message) {
    if (g_detail.empty()) g_detail = message;
}

#define REQUIRE_TRUE(cond)                                              \
    do {                                                                \
        if (!(cond)) {                                                  \
            detail(std::string(#cond) + " (line " +                    \
                   std::to_string(__LINE__) + ")");                     \
            return false;                                               \
        }                                                               \
    } while (0)

std::string data_path(const std::string& rel) {
    return std::string(LEAKSCOPE_SOURCE_DIR) + "/" + rel;
}

std::filesystem::path scratch_dir(const std::string& tag) {
    auto dir = std::filesystem::temp_directory_path() / ("leakscope_accept_" + tag);
    std::filesystem::remove_all(dir);
    std::filesystem::create_directories(dir);
    return dir;
}

const std::vector<scan::LeakRule>& shipped_rules() {
    static auto rules = scan::parse_ruleset(io::read_file(data_path("data/leak_rules.tsv")));
    return rules;
}

const persona::TraitLexicon& shipped_lexicon() {
    static auto lexicon =
        persona::parse_lexicon(io::read_file(data_path("data/disc_lexicon.tsv")));
    return lexicon;
}

synth::SynthParams reference_params(std::uint64_t seed) {
    synth::SynthParams params;
    params.seed = seed;
    params.raw_count = 866;
    params.duplicate_count = 396;
    params.events_per_group = {{persona::Trait::D, 21},
                               {persona::Trait::I, 6},
                               {persona::Trait::S, 23},
                               {persona::Trait::C, 70}};
    params.incidents_per_group = {{persona::Trait::D, 9},
                                  {persona::Trait::I, 3},
                                  {persona::Trait::S, 6},
                                  {persona::Trait::C, 31}};
    return params;
}

const std::vector<analytics::GroupStats>& reference_table() {
    static std::vector<analytics::GroupStats> table = {
        {persona::Trait::D, 21, 9, 18, 9.0 / 21.0},
        {persona::Trait::I, 6, 3, 6, 3.0 / 6.0},
        {persona::Trait::S, 23, 6, 12, 6.0 / 23.0},
        {persona::Trait::C, 70, 31, 63, 31.0 / 70.0},
    };
    return table;
}

std::string field_text(const Profile& profile, const std::string& field) {
    if (field == "headline") return profile.headline;
    if (field == "summary") return profile.summary;
    if (field.rfind("experience.", 0) == 0) {
        auto rest = field.substr(11);
        auto dot = rest.find('.');
        std::size_t index = std::stoul(rest.substr(0, dot));
        if (index < profile.experiences.size() && rest.substr(dot + 1) == "description")
            return profile.experiences[index].description;
    }
    return {};
}

// ---------------------------------------------------------------- criterion 1

bool closed_loop_reproduction() {
    auto dir = scratch_dir("loop");
    auto started = std::chrono::steady_clock::now();

    auto corpus = synth::generate_corpus(reference_params(20190402), shipped_rules(),
                                         shipped_lexicon());
    io::write_file((dir / "records.csv").string(), synth::records_to_csv(corpus.records));
    io::write_file((dir / "salt.txt").string(), "acceptance-salt\n");

    report::PipelineConfig config;
    config.inputs = {(dir / "records.csv").string()};
    config.input_format = "csv";
    config.salt_file = (dir / "salt.txt").string();
    config.rules_file = data_path("data/leak_rules.tsv");
    config.lexicon_file = data_path("data/disc_lexicon.tsv");
    config.out_dir = (dir / "out").string();
    auto bundle = report::run_pipeline(config);

    auto elapsed = std::chrono::duration_cast<std::chrono::seconds>(
                       std::chrono::steady_clock::now() - started)
                       .count();
    REQUIRE_TRUE(elapsed < 60);

    REQUIRE_TRUE(bundle.corpus.raw == 866);
    REQUIRE_TRUE(bundle.corpus.unique == 470);
    REQUIRE_TRUE(bundle.corpus.events == 120);
    REQUIRE_TRUE(bundle.corpus.incidents == 49);
    REQUIRE_TRUE(bundle.corpus.low_share_pct == 59);
    REQUIRE_TRUE(bundle.corpus.high_share_pct == 41);
    REQUIRE_TRUE(bundle.groups == reference_table());

    REQUIRE_TRUE(bundle.pareto.ordering ==
                 (std::vector<std::string>{"C", "D", "S", "I"}));
    REQUIRE_TRUE(bundle.pareto.vital_few == (std::vector<std::string>{"C", "D"}));

    REQUIRE_TRUE(bundle.hypotheses.size() == 4);
    REQUIRE_TRUE(bundle.hypotheses[0].verdict == analytics::Verdict::Supported);
    REQUIRE_TRUE(bundle.hypotheses[1].verdict == analytics::Verdict::Supported);
    REQUIRE_TRUE(bundle.hypotheses[2].verdict == analytics::Verdict::Supported);
    REQUIRE_TRUE(bundle.hypotheses[3].verdict == analytics::Verdict::Refuted);
    return true;
}

// ---------------------------------------------------------------- criterion 2

bool pareto_reference_reproduction() {
    auto report = analytics::pareto_analysis(reference_table(), 0.80);
    REQUIRE_TRUE(report.ordering == (std::vector<std::string>{"C", "D", "S", "I"}));
    const double expected[] = {0.633, 0.816, 0.939, 1.000};
    REQUIRE_TRUE(report.cumulative_share.size() == 4);
    for (std::size_t k = 0; k < 4; ++k)
        REQUIRE_TRUE(std::fabs(report.cumulative_share[k] - expected[k]) <= 0.001);
    REQUIRE_TRUE(report.vital_few == (std::vector<std::string>{"C", "D"}));
    REQUIRE_TRUE(std::fabs(report.cumulative_share[1] - 40.0 / 49.0) < 1e-12);
    return true;
}

// ---------------------------------------------------------------- criterion 3

bool hypothesis_verdicts() {
    auto outcomes = analytics::evaluate_hypotheses(reference_table());
    REQUIRE_TRUE(outcomes.size() == 4);
    REQUIRE_TRUE(outcomes[0].id == analytics::HypothesisId::H1 &&
                 outcomes[0].verdict == analytics::Verdict::Supported);
    REQUIRE_TRUE(outcomes[1].id == analytics::HypothesisId::H2 &&
                 outcomes[1].verdict == analytics::Verdict::Supported);
    REQUIRE_TRUE(outcomes[2].id == analytics::HypothesisId::H3 &&
                 outcomes[2].verdict == analytics::Verdict::Supported);
    REQUIRE_TRUE(outcomes[3].id == analytics::HypothesisId::H4 &&
                 outcomes[3].verdict == analytics::Verdict::Refuted);
    return true;
}

// ---------------------------------------------------------------- criterion 4

std::string random_word(rng::Stream& stream, std::size_t min_len, std::size_t max_len) {
    static const char letters[] = "abcdefghijklmnopqrstuvwxyz";
    std::size_t len = min_len + stream.index(max_len - min_len + 1);
    std::string word;
    for (std::size_t k = 0; k < len; ++k) word += letters[stream.index(26)];
    return word;
}

std::string random_phrase(rng::Stream& stream, std::size_t max_words) {
    std::string phrase = random_word(stream, 2, 8);
    std::size_t extra = stream.index(max_words);
    for (std::size_t k = 0; k < extra; ++k) phrase += " " + random_word(stream, 2, 8);
    return phrase;
}

dork::QuerySpec random_spec(rng::Stream& stream) {
    dork::QuerySpec spec;
    std::size_t labels = 2 + stream.index(3);
    for (std::size_t k = 0; k < labels; ++k) {
        if (k) spec.site += ".";
        spec.site += random_word(stream, 2, 6);
    }
    spec.region = random_phrase(stream, 2);
    spec.country = random_phrase(stream, 1);
    spec.company = random_phrase(stream, 2);

    std::set<std::string> used;
    std::size_t types = stream.index(5);
    while (spec.employment_types.size() < types) {
        auto word = random_phrase(stream, 1);
        if (used.insert(text::to_lower_ascii(word)).second)
            spec.employment_types.push_back(word);
    }
    if (!spec.employment_types.empty()) {
        std::size_t groups = stream.index(3);
        for (std::size_t g = 0; g < groups; ++g) {
            std::vector<std::string> keywords;
            std::size_t count = 1 + stream.index(3);
            for (std::size_t k = 0; k < count; ++k)
                keywords.push_back(random_phrase(stream, 1));
            spec.extra_groups.push_back(std::move(keywords));
        }
    }
    return spec;
}

bool query_fidelity() {
    dork::QuerySpec reference;
    reference.site = "website.com";
    reference.region = "Region Area";
    reference.country = "Country";
    reference.company = "company name";
    reference.employment_types = {"consultant", "contractor", "full time", "temporary"};
    REQUIRE_TRUE(dork::build_dork_query(reference, dork::QueryStyle::Verbatim) ==
                 "site:website.com inurl:in (\"Region Area, Country\" AND \"company name\") & "
                 "(\"consultant\" OR \"contractor\" OR \"full time\" OR \"temporary\")");
    REQUIRE_TRUE(dork::parse_dork_query(dork::build_dork_query(
                     reference, dork::QueryStyle::Verbatim)) == reference);

    rng::Stream stream(0xD0CF00D5);
    for (int round = 0; round < 1000; ++round) {
        auto spec = random_spec(stream);
        for (auto style : {dork::QueryStyle::Verbatim, dork::QueryStyle::Normalized}) {
            auto query = dork::build_dork_query(spec, style);
            if (!(dork::parse_dork_query(query) == spec)) {
                detail("round-trip mismatch at round " + std::to_string(round) + ": " + query);
                return false;
            }
        }
    }
    return true;
}

// ---------------------------------------------------------------- criterion 5

int tie_rank(const std::string& label) {
    if (label == "C") return 0;
    if (label == "D") return 1;
    if (label == "I") return 2;
    if (label == "S") return 3;
    return 4;
}

bool pareto_oracle_equivalence() {
    const std::vector<std::string> pool = {"A", "B", "C", "D", "E", "F",
                                           "G", "H", "I", "J", "K", "S"};
    rng::Stream stream(0x9A7E70);
    for (int round = 0; round < 1000; ++round) {
        auto labels = pool;
        stream.shuffle(labels);
        std::size_t count = 4 + stream.index(5); // 4..8 groups
        std::vector<analytics::ParetoItem> items;
        std::size_t total = 0;
        for (std::size_t k = 0; k < count; ++k) {
            items.push_back({labels[k], stream.index(41)});
            total += items.back().incidents;
        }
        double threshold = (1.0 + stream.index(1000)) / 1000.0;
        auto report = analytics::pareto_analysis(items, threshold);

        // brute-force oracle: descending sort with the documented tie-break,
        // then the shortest prefix whose share reaches the threshold
        auto ranked = items;
        std::erase_if(ranked, [](const analytics::ParetoItem& item) {
            return item.incidents == 0;
        });
        std::stable_sort(ranked.begin(), ranked.end(),
                         [](const analytics::ParetoItem& a, const analytics::ParetoItem& b) {
                             if (a.incidents != b.incidents) return a.incidents > b.incidents;
                             if (tie_rank(a.label) != tie_rank(b.label))
                                 return tie_rank(a.label) < tie_rank(b.label);
                             return a.label < b.label;
                         });
        std::vector<std::string> expected_order;
        for (const auto& item : ranked) expected_order.push_back(item.label);
        std::vector<std::string> expected_vital;
        std::size_t running = 0;
        for (const auto& item : ranked) {
            running += item.incidents;
            expected_vital.push_back(item.label);
            if (static_cast<double>(running) / static_cast<double>(total) + 1e-12 >= threshold)
                break;
        }
        if (total == 0) expected_vital.clear();

        if (report.ordering != expected_order || report.vital_few != expected_vital) {
            detail("oracle mismatch at round " + std::to_string(round));
            return false;
        }
        REQUIRE_TRUE(report.total_incidents == total);
        for (std::size_t k = 0; k + 1 < report.cumulative_share.size(); ++k)
            REQUIRE_TRUE(report.cumulative_share[k] <= report.cumulative_share[k + 1] + 1e-12);
        if (total > 0 && !report.cumulative_share.empty())
            REQUIRE_TRUE(std::fabs(report.cumulative_share.back() - 1.0) <= 1e-9);
    }
    return true;
}

// ---------------------------------------------------------------- criterion 6

bool disc_invariants() {
    const auto& lexicon = shipped_lexicon();
    std::vector<std::string> vocabulary;
    for (const auto& entry : lexicon.entries) vocabulary.push_back(entry.phrase);
    for (const auto& word : synth::filler_vocabulary()) vocabulary.push_back(word);
    for (const char* w : {"i", "my", "maybe", "perhaps", "likely", "make", "take", "lead"})
        vocabulary.push_back(w);
    const std::vector<std::string> punctuation = {".", "!", "?", ",", ""};

    rng::Stream stream(0xD15C);
    for (int round = 0; round < 1000; ++round) {
        std::size_t words = 35 + stream.index(46);
        std::string body;
        for (std::size_t k = 0; k < words; ++k) {
            if (!body.empty()) body += " ";
            body += stream.pick(vocabulary);
            body += stream.pick(punctuation);
        }
        auto once = persona::estimate_disc({body}, lexicon);
        double sum = once.d + once.i + once.s + once.c;
        REQUIRE_TRUE(std::fabs(sum - 1.0) <= 1e-9);
        REQUIRE_TRUE(once.d >= 0 && once.i >= 0 && once.s >= 0 && once.c >= 0);

        auto twice = persona::estimate_disc({body, body}, lexicon);
        REQUIRE_TRUE(std::fabs(once.d - twice.d) <= 1e-12);
        REQUIRE_TRUE(std::fabs(once.i - twice.i) <= 1e-12);
        REQUIRE_TRUE(std::fabs(once.s - twice.s) <= 1e-12);
        REQUIRE_TRUE(std::fabs(once.c - twice.c) <= 1e-12);
        REQUIRE_TRUE(once.dominant == twice.dominant);

        // argmax invariance under positive rescaling of the raw evidence
        std::array<double, 4> raw;
        for (auto& value : raw) value = stream.index(1000) / 250.0;
        auto base = persona::finalize_scores(raw, 40);
        for (double lambda : {1e-3, 0.7, 13.0, 1e4}) {
            std::array<double, 4> scaled;
            for (std::size_t k = 0; k < 4; ++k) scaled[k] = raw[k] * lambda;
            auto rescaled = persona::finalize_scores(scaled, 40);
            REQUIRE_TRUE(rescaled.dominant == base.dominant);
            REQUIRE_TRUE(rescaled.tier == base.tier);
        }

        // per-coordinate monotonicity of the Big-Five mapping
        persona::BigFiveScores b;
        b.openness = stream.index(101) / 100.0;
        b.conscientiousness = stream.index(101) / 100.0;
        b.extraversion = stream.index(101) / 100.0;
        b.agreeableness = stream.index(101) / 100.0;
        b.neuroticism = stream.index(101) / 100.0;
        auto before = persona::map_bigfive_to_disc(b);
        struct Axis {
            double persona::BigFiveScores::* member;
            persona::Trait trait;
        };
        const Axis axes[] = {
            {&persona::BigFiveScores::openness, persona::Trait::D},
            {&persona::BigFiveScores::neuroticism, persona::Trait::D},
            {&persona::BigFiveScores::extraversion, persona::Trait::I},
            {&persona::BigFiveScores::agreeableness, persona::Trait::S},
            {&persona::BigFiveScores::conscientiousness, persona::Trait::C},
        };
        for (const auto& axis : axes) {
            auto bumped = b;
            bumped.*axis.member = std::min(1.0, bumped.*axis.member + 0.15);
            auto after = persona::map_bigfive_to_disc(bumped);
            REQUIRE_TRUE(after.component(axis.trait) >=
                         before.component(axis.trait) - 1e-12);
            auto raw_before = persona::map_bigfive_raw(b);
            auto raw_after = persona::map_bigfive_raw(bumped);
            for (std::size_t k = 0; k < 4; ++k) {
                if (persona::kAllTraits[k] == axis.trait)
                    REQUIRE_TRUE(raw_after[k] >= raw_before[k] - 1e-12);
            }
        }
    }
    return true;
}

// ---------------------------------------------------------------- criterion 7

std::vector<Profile> random_profiles(rng::Stream& stream) {
    std::size_t subjects = 3 + stream.index(20);
    std::vector<Profile> profiles;
    std::size_t sequence = 0;
    for (std::size_t s = 0; s < subjects; ++s) {
        auto hash = digest::sha256_hex("subject-" + std::to_string(stream.next()));
        std::size_t copies = 1 + stream.index(4);
        for (std::size_t copy = 0; copy < copies; ++copy) {
            Profile profile;
            char buf[32];
            std::snprintf(buf, sizeof buf, "%s-%06zu", hash.substr(0, 12).c_str(), ++sequence);
            profile.id = buf;
            profile.subject_hash = hash;
            profile.summary = "summary " + std::to_string(stream.next() % 1000);
            if (stream.index(2)) profile.headline = "headline";
            if (stream.index(2)) profile.region = "North Area";
            profiles.push_back(std::move(profile));
        }
    }
    stream.shuffle(profiles);
    return profiles;
}

bool wrangling_properties() {
    rng::Stream stream(0x3E11);
    for (int round = 0; round < 200; ++round) {
        auto profiles = random_profiles(stream);

        auto unique = wrangle::dedupe(profiles);
        REQUIRE_TRUE(wrangle::dedupe(unique) == unique);
        REQUIRE_TRUE(unique.size() <= profiles.size());

        auto shuffled = profiles;
        stream.shuffle(shuffled);
        REQUIRE_TRUE(wrangle::dedupe(shuffled) == unique);

        auto cleaned = wrangle::clean(profiles, wrangle::inspect(profiles));
        auto survivors = wrangle::dedupe(cleaned.profiles);
        auto verdict = wrangle::verify(profiles, survivors, cleaned.report);
        if (!verdict.passed) {
            detail("verify failed on round " + std::to_string(round) + ": " +
                   (verdict.failures.empty() ? "?" : verdict.failures.front()));
            return false;
        }

        // constructed counterexample: a surviving duplicate must be caught
        if (!survivors.empty()) {
            auto sabotaged = survivors;
            auto copy = survivors.front();
            copy.id = "zz-999999";
            sabotaged.push_back(copy);
            auto failed = wrangle::verify(profiles, sabotaged, cleaned.report);
            REQUIRE_TRUE(!failed.passed);
            bool mentions_duplicate = false;
            for (const auto& failure : failed.failures)
                if (failure.find("DuplicateCandidate") != std::string::npos)
                    mentions_duplicate = true;
            REQUIRE_TRUE(mentions_duplicate);
        }
    }
    return true;
}

// ---------------------------------------------------------------- criterion 8

bool planted_finding_integrity() {
    auto corpus = synth::generate_corpus(reference_params(424242), shipped_rules(),
                                         shipped_lexicon());
    auto records = ingest::ingest_table_file(synth::records_to_csv(corpus.records),
                                             ingest::TableFormat::CommaSeparated, "records.csv");
    const std::string salt = "integrity-salt";
    auto profiles = ingest::normalize_all(records, salt);
    auto cleaned = wrangle::clean(profiles, wrangle::inspect(profiles));
    auto unique = wrangle::dedupe(cleaned.profiles);
    REQUIRE_TRUE(unique.size() == corpus.manifest.unique_count);

    std::map<std::string, const Profile*> by_hash;
    for (const auto& profile : unique) by_hash[profile.subject_hash] = &profile;

    std::vector<scan::DisclosureFinding> findings;
    for (const auto& profile : unique) {
        auto found = scan::classify_profile(profile, shipped_rules());
        findings.insert(findings.end(), found.begin(), found.end());
    }

    std::map<std::string, std::vector<scan::DisclosureFinding>> by_profile;
    for (const auto& finding : findings) by_profile[finding.profile_id].push_back(finding);

    std::size_t planted_total = 0, planted_high = 0;
    for (const auto& subject : corpus.manifest.subjects) {
        auto hash = digest::hmac_sha256_hex(salt, subject.name + "\x1f" + subject.source_uri);
        auto it = by_hash.find(hash);
        REQUIRE_TRUE(it != by_hash.end());
        const auto& profile = *it->second;
        const auto& profile_findings = by_profile[profile.id];

        // recall: exactly one finding per planted phrase, offset-exact
        REQUIRE_TRUE(profile_findings.size() == subject.planted.size());
        for (const auto& planted : subject.planted) {
            ++planted_total;
            planted_high += planted.impact == scan::Impact::High ? 1 : 0;
            std::size_t matches = 0;
            for (const auto& finding : profile_findings) {
                if (finding.rule_id != planted.rule_id ||
                    finding.evidence.field != planted.field)
                    continue;
                ++matches;
                REQUIRE_TRUE(finding.impact == planted.impact);
                auto text_value = field_text(profile, finding.evidence.field);
                REQUIRE_TRUE(finding.evidence.end <= text_value.size());
                auto slice = text_value.substr(finding.evidence.begin,
                                               finding.evidence.end - finding.evidence.begin);
                REQUIRE_TRUE(slice == finding.evidence.quote);
                REQUIRE_TRUE(text::to_lower_ascii(slice) ==
                             text::to_lower_ascii(planted.phrase));
            }
            REQUIRE_TRUE(matches == 1);
        }
    }

    // precision: no finding beyond the planted ones
    REQUIRE_TRUE(findings.size() == planted_total);
    std::size_t high_findings = 0;
    for (const auto& finding : findings)
        high_findings += finding.impact == scan::Impact::High ? 1 : 0;
    REQUIRE_TRUE(high_findings == planted_high);
    REQUIRE_TRUE(planted_high == 49);
    REQUIRE_TRUE(planted_total == 120);
    return true;
}

struct Criterion {
    const char* name;
    bool (*run)();
};

} // namespace

int main() {
    const Criterion criteria[] = {
        {"closed-loop corpus reproduction", closed_loop_reproduction},
        {"pareto reference reproduction", pareto_reference_reproduction},
        {"hypothesis verdicts", hypothesis_verdicts},
        {"query build/parse fidelity", query_fidelity},
        {"pareto oracle equivalence", pareto_oracle_equivalence},
        {"disc scorer invariants", disc_invariants},
        {"wrangling properties", wrangling_properties},
        {"planted finding integrity", planted_finding_integrity},
    };

    int failures = 0;
    for (const auto& criterion : criteria) {
        bool ok = false;
        g_detail.clear();
        try {
            ok = criterion.run();
        } catch (const std::exception& e) {
            detail(e.what());
        }
        if (ok) {
            std::printf("PASS  %s\n", criterion.name);
        } else {
            ++failures;
            std::printf("FAIL  %s%s%s\n", criterion.name, g_detail.empty() ? "" : " — ",
                        g_detail.c_str());
        }
    }
    return failures;
}
