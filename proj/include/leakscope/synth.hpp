#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "leakscope/leakscan.hpp"
#include "leakscope/persona.hpp"
#include "leakscope/profile.hpp"

namespace leakscope::synth {

struct SynthParams {
    std::uint64_t seed = 0;
    std::size_t raw_count = 0;
    std::size_t duplicate_count = 0;
    std::map<persona::Trait, std::size_t> events_per_group;
    std::map<persona::Trait, std::size_t> incidents_per_group;
    std::string rules_file;
    std::string lexicon_file;
};

struct PlantedPhrase {
    std::string field; // "summary" or "experience.N.description"
    std::string phrase;
    std::string rule_id;
    scan::Impact impact = scan::Impact::Low;
};

struct SubjectTruth {
    std::size_t index = 0;
    std::string name;
    std::string source_uri;
    persona::Trait trait = persona::Trait::D;
    bool event = false;
    bool incident = false;
    std::size_t duplicate_copies = 0;
    std::vector<PlantedPhrase> planted;
};

struct Manifest {
    SynthParams params;
    std::size_t unique_count = 0;
    std::vector<SubjectTruth> subjects;
};

struct GeneratedCorpus {
    std::vector<RawRecord> records;
    Manifest manifest;
};

// Deterministic planted corpus: every event subject carries exactly one
// ruleset phrase (High impact for incidents, Low otherwise), every subject's
// text is dominated by its trait's lexicon entries, duplicates are copies
// with perturbed timestamps. Throws InfeasibleParams.
GeneratedCorpus generate_corpus(const SynthParams& params,
                                const std::vector<scan::LeakRule>& rules,
                                const persona::TraitLexicon& lexicon);

// Canonical CSV serialization of the generated records (the form `leakscope
// synth` writes and `leakscope ingest --format csv` reads back).
std::string records_to_csv(const std::vector<RawRecord>& records);

// Neutral filler vocabulary; exposed so tests can assert it stays disjoint
// from rule and lexicon tokens.
const std::vector<std::string>& filler_vocabulary();

} // namespace leakscope::synth
