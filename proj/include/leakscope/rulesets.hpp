#pragma once

#include <cstddef>
#include <string>
#include <string_view>

namespace leakscope::rules {

enum class DataFileKind { LeakRules, DiscLexicon, Fixture };

std::string_view data_file_kind_name(DataFileKind kind);

struct DataFileManifest {
    std::string path;
    DataFileKind kind = DataFileKind::LeakRules;
    std::string version;
    std::size_t entry_count = 0;
    std::string checksum; // sha256 of the file bytes
};

// Parses and validates a shipped data file: every entry invariant must hold,
// every disclosure category needs >= 5 rules, every DISC trait >= 10 lexicon
// entries. Throws SchemaError(line) / CoverageError.
DataFileManifest validate_ruleset(const std::string& path, DataFileKind kind);

DataFileManifest validate_ruleset_text(std::string_view data,
                                       DataFileKind kind,
                                       const std::string& path_label);

} // namespace leakscope::rules
