#include "doctest.h"

#include "leakscope/corpus_io.hpp"
#include "leakscope/digest.hpp"
#include "leakscope/error.hpp"
#include "leakscope/rulesets.hpp"

#include "helpers.hpp"

using namespace leakscope;

TEST_CASE("shipped leak ruleset validates") {
    auto path = testutil::data_path("data/leak_rules.tsv");
    auto manifest = rules::validate_ruleset(path, rules::DataFileKind::LeakRules);
    CHECK(manifest.path == path);
    CHECK(manifest.kind == rules::DataFileKind::LeakRules);
    CHECK(manifest.version == "1.0.0");
    CHECK(manifest.entry_count == 22);
    CHECK(manifest.checksum == digest::sha256_hex(io::read_file(path)));
}

TEST_CASE("shipped lexicon validates") {
    auto manifest = rules::validate_ruleset(testutil::data_path("data/disc_lexicon.tsv"),
                                            rules::DataFileKind::DiscLexicon);
    CHECK(manifest.version == "1.0.0");
    CHECK(manifest.entry_count == 53); // 48 entries + 5 style features
}

TEST_CASE("fixture kind counts non-empty lines") {
    auto manifest = rules::validate_ruleset_text("a\n\nb\nc\n", rules::DataFileKind::Fixture,
                                                 "fixture.txt");
    CHECK(manifest.entry_count == 3);
    CHECK(manifest.checksum == digest::sha256_hex("a\n\nb\nc\n"));
}

TEST_CASE("missing category coverage is reported") {
    // strip every sensitive_role rule from the shipped set
    auto data = io::read_file(testutil::data_path("data/leak_rules.tsv"));
    std::string filtered;
    std::size_t start = 0;
    while (start < data.size()) {
        auto end = data.find('\n', start);
        if (end == std::string::npos) end = data.size();
        auto line = data.substr(start, end - start);
        if (line.find("sensitive_role") == std::string::npos) filtered += line + "\n";
        start = end + 1;
    }
    try {
        rules::validate_ruleset_text(filtered, rules::DataFileKind::LeakRules, "filtered.tsv");
        FAIL("expected CoverageError");
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::CoverageError);
        CHECK(std::string(e.what()).find("sensitive_role") != std::string::npos);
    }
}

TEST_CASE("thin trait coverage is reported") {
    std::string thin = "[entries]\ndirect\tD\t1\n[features]\n";
    try {
        rules::validate_ruleset_text(thin, rules::DataFileKind::DiscLexicon, "thin.tsv");
        FAIL("expected CoverageError");
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::CoverageError);
    }
}

TEST_CASE("empty file is a schema error at line 1") {
    for (auto kind : {rules::DataFileKind::LeakRules, rules::DataFileKind::DiscLexicon,
                      rules::DataFileKind::Fixture}) {
        try {
            rules::validate_ruleset_text("", kind, "empty");
            FAIL("expected SchemaError");
        } catch (const Error& e) {
            CHECK(e.code() == ErrorCode::SchemaError);
            CHECK(e.position() == 1);
        }
    }
}

TEST_CASE("missing file is an io error") {
    try {
        rules::validate_ruleset("no/such/file.tsv", rules::DataFileKind::LeakRules);
        FAIL("expected IoError");
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::IoError);
        CHECK(e.exit_code() == 2);
    }
}

TEST_CASE("kind names") {
    CHECK(rules::data_file_kind_name(rules::DataFileKind::LeakRules) == "leak_rules");
    CHECK(rules::data_file_kind_name(rules::DataFileKind::DiscLexicon) == "disc_lexicon");
    CHECK(rules::data_file_kind_name(rules::DataFileKind::Fixture) == "fixture");
}
