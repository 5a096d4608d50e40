#include "leakscope/rulesets.hpp"

#include "leakscope/corpus_io.hpp"
#include "leakscope/digest.hpp"
#include "leakscope/error.hpp"
#include "leakscope/leakscan.hpp"
#include "leakscope/persona.hpp"
#include "leakscope/textutil.hpp"

#include <map>

namespace leakscope::rules {

std::string_view data_file_kind_name(DataFileKind kind) {
    switch (kind) {
    case DataFileKind::LeakRules: return "leak_rules";
    case DataFileKind::DiscLexicon: return "disc_lexicon";
    case DataFileKind::Fixture: return "fixture";
    }
    return "fixture";
}

namespace {

std::string header_version(std::string_view data) {
    std::size_t pos = 0;
    while (pos < data.size()) {
        std::size_t nl = data.find('\n', pos);
        std::string_view line =
            nl == std::string_view::npos ? data.substr(pos) : data.substr(pos, nl - pos);
        pos = nl == std::string_view::npos ? data.size() : nl + 1;
        if (line.empty() || line[0] != '#') break;
        std::string canon = text::canonicalize(line.substr(1));
        if (canon.rfind("version:", 0) == 0)
            return text::canonicalize(canon.substr(8));
    }
    return "";
}

std::size_t count_nonempty_lines(std::string_view data) {
    std::size_t count = 0;
    std::size_t pos = 0;
    while (pos < data.size()) {
        std::size_t nl = data.find('\n', pos);
        std::string_view line =
            nl == std::string_view::npos ? data.substr(pos) : data.substr(pos, nl - pos);
        pos = nl == std::string_view::npos ? data.size() : nl + 1;
        if (!text::canonicalize(line).empty()) ++count;
    }
    return count;
}

} // namespace

DataFileManifest validate_ruleset_text(std::string_view data,
                                       DataFileKind kind,
                                       const std::string& path_label) {
    if (text::canonicalize(data).empty())
        throw Error(ErrorCode::SchemaError, "file is empty: \"" + path_label + "\"", 1);

    DataFileManifest manifest;
    manifest.path = path_label;
    manifest.kind = kind;
    manifest.version = header_version(data);
    manifest.checksum = digest::sha256_hex(data);

    switch (kind) {
    case DataFileKind::LeakRules: {
        auto parsed = scan::parse_ruleset(data);
        manifest.entry_count = parsed.size();
        std::map<scan::DisclosureCategory, std::size_t> per_category;
        for (const auto& rule : parsed) ++per_category[rule.category];
        for (auto category :
             {scan::DisclosureCategory::InternalSensitive, scan::DisclosureCategory::IctInfrastructure,
              scan::DisclosureCategory::SensitiveRole, scan::DisclosureCategory::PersonalJobLinked}) {
            if (per_category[category] < 5)
                throw Error(ErrorCode::CoverageError,
                            std::string(scan::category_name(category)) + " has " +
                                std::to_string(per_category[category]) +
                                " rules, need at least 5");
        }
        break;
    }
    case DataFileKind::DiscLexicon: {
        auto lexicon = persona::parse_lexicon(data);
        manifest.entry_count = lexicon.entries.size() + lexicon.style_features.size();
        std::map<persona::Trait, std::size_t> per_trait;
        for (const auto& entry : lexicon.entries) ++per_trait[entry.trait];
        for (persona::Trait trait : persona::kAllTraits) {
            if (per_trait[trait] < 10)
                throw Error(ErrorCode::CoverageError,
                            std::string(persona::trait_name(trait)) + " has " +
                                std::to_string(per_trait[trait]) +
                                " lexicon entries, need at least 10");
        }
        break;
    }
    case DataFileKind::Fixture:
        manifest.entry_count = count_nonempty_lines(data);
        break;
    }
    return manifest;
}

DataFileManifest validate_ruleset(const std::string& path, DataFileKind kind) {
    return validate_ruleset_text(io::read_file(path), kind, path);
}

} // namespace leakscope::rules
