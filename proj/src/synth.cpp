#include "leakscope/synth.hpp"

#include "leakscope/csv.hpp"
#include "leakscope/error.hpp"
#include "leakscope/rng.hpp"
#include "leakscope/textutil.hpp"

#include <algorithm>
#include <array>
#include <set>

namespace leakscope::synth {

namespace {

// Every word here must stay disjoint from the rule patterns, the trait
// lexicon, hedge/imperative/first-person style markers and the employment
// keywords, so planted evidence is the only evidence (see the disjointness
// test).
const std::vector<std::string> kFiller = {
    "morning", "afternoon", "evening", "season", "garden",  "street",  "music",
    "color",   "number",    "letter",  "moment", "corner",  "bridge",  "river",
    "valley",  "harbor",    "lantern", "meadow", "pebble",  "orchard", "willow",
    "summit",  "prairie",   "canyon",  "forest", "village", "castle",  "cottage",
    "marble",  "copper",    "timber",
};

const std::vector<std::string> kRoles = {
    "planner", "coordinator", "analyst", "engineer", "manager", "administrator",
    "specialist", "director",
};

const std::vector<std::string> kSyllables = {
    "bel", "dor", "fan", "gil", "hem", "jor", "kal", "lin", "mor", "nev",
    "pol", "quin", "rab", "sel", "tam", "ulf", "ver", "wim", "yor", "zan",
};

const std::vector<std::string> kRegions = {
    "North Area, Country", "South Area, Country", "East Area, Country", "West Area, Country",
};

const std::vector<std::string> kCategories = {
    "Full time", "Contractor", "Consultant", "Temporary",
};

std::string capitalize(std::string word) {
    if (!word.empty() && word[0] >= 'a' && word[0] <= 'z')
        word[0] = static_cast<char>(word[0] - 'a' + 'A');
    return word;
}

std::string make_name(rng::Stream& stream) {
    std::string first = kSyllables[stream.index(kSyllables.size())] +
                        kSyllables[stream.index(kSyllables.size())];
    std::string last = kSyllables[stream.index(kSyllables.size())] +
                       kSyllables[stream.index(kSyllables.size())];
    return capitalize(first) + " " + capitalize(last);
}

// One flavor sentence: filler words with `hits` trait phrases mixed in.
std::string make_sentence(rng::Stream& stream,
                          const std::vector<std::string>& trait_phrases,
                          std::size_t hits) {
    std::size_t filler_words = 4 + stream.index(3); // 4..6
    std::vector<std::string> words;
    for (std::size_t k = 0; k < filler_words; ++k)
        words.push_back(kFiller[stream.index(kFiller.size())]);
    for (std::size_t k = 0; k < hits; ++k) {
        std::size_t at = 1 + stream.index(words.size()); // never sentence-initial
        words.insert(words.begin() + static_cast<long>(at),
                     trait_phrases[stream.index(trait_phrases.size())]);
    }
    std::string sentence;
    for (std::size_t k = 0; k < words.size(); ++k) {
        if (k > 0) sentence += ' ';
        sentence += words[k];
    }
    sentence = capitalize(std::move(sentence));
    sentence += '.';
    return sentence;
}

// A sentence that embeds one ruleset pattern verbatim.
std::string make_leak_sentence(rng::Stream& stream, const std::string& pattern) {
    std::string sentence = capitalize(kFiller[stream.index(kFiller.size())]);
    sentence += ' ';
    sentence += kFiller[stream.index(kFiller.size())];
    sentence += ' ';
    sentence += pattern;
    sentence += ' ';
    sentence += kFiller[stream.index(kFiller.size())];
    sentence += '.';
    return sentence;
}

std::string join_sentences(const std::vector<std::string>& sentences) {
    std::string out;
    for (std::size_t k = 0; k < sentences.size(); ++k) {
        if (k > 0) out += ' ';
        out += sentences[k];
    }
    return out;
}

} // namespace

const std::vector<std::string>& filler_vocabulary() { return kFiller; }

GeneratedCorpus generate_corpus(const SynthParams& params,
                                const std::vector<scan::LeakRule>& rules,
                                const persona::TraitLexicon& lexicon) {
    auto group_count = [&](const std::map<persona::Trait, std::size_t>& counts,
                           persona::Trait trait) {
        auto it = counts.find(trait);
        return it == counts.end() ? std::size_t{0} : it->second;
    };

    if (params.raw_count == 0) {
        bool any = params.duplicate_count > 0;
        for (persona::Trait trait : persona::kAllTraits)
            any = any || group_count(params.events_per_group, trait) > 0 ||
                  group_count(params.incidents_per_group, trait) > 0;
        if (any)
            throw Error(ErrorCode::InfeasibleParams,
                        "raw_count 0 admits no duplicates, events or incidents");
        GeneratedCorpus empty;
        empty.manifest.params = params;
        return empty;
    }

    if (params.duplicate_count >= params.raw_count)
        throw Error(ErrorCode::InfeasibleParams,
                    "duplicate_count " + std::to_string(params.duplicate_count) +
                        " must be smaller than raw_count " + std::to_string(params.raw_count));

    std::size_t unique_count = params.raw_count - params.duplicate_count;
    std::size_t total_events = 0;
    for (persona::Trait trait : persona::kAllTraits) {
        std::size_t events = group_count(params.events_per_group, trait);
        std::size_t incidents = group_count(params.incidents_per_group, trait);
        if (incidents > events)
            throw Error(ErrorCode::InfeasibleParams,
                        std::string("incidents exceed events for group ") +
                            std::string(persona::trait_name(trait)));
        total_events += events;
    }
    if (total_events > unique_count)
        throw Error(ErrorCode::InfeasibleParams,
                    "events " + std::to_string(total_events) + " exceed unique profiles " +
                        std::to_string(unique_count) + " (raw_count - duplicate_count)");

    // Planted-phrase pools.
    std::vector<const scan::LeakRule*> low_rules;
    std::vector<const scan::LeakRule*> high_rules;
    for (const auto& rule : rules) {
        (rule.impact == scan::Impact::High ? high_rules : low_rules).push_back(&rule);
    }
    bool need_high = false;
    bool need_low = false;
    for (persona::Trait trait : persona::kAllTraits) {
        std::size_t events = group_count(params.events_per_group, trait);
        std::size_t incidents = group_count(params.incidents_per_group, trait);
        if (incidents > 0) need_high = true;
        if (events > incidents) need_low = true;
    }
    if (need_high && high_rules.empty())
        throw Error(ErrorCode::InfeasibleParams, "incident profiles need a high-impact rule");
    if (need_low && low_rules.empty())
        throw Error(ErrorCode::InfeasibleParams, "event profiles need a low-impact rule");

    // Per-trait single-source phrase pools for the personality conditioning.
    std::array<std::vector<std::string>, 4> trait_phrases;
    for (const auto& entry : lexicon.entries) {
        auto slot = static_cast<std::size_t>(
            std::find(persona::kAllTraits.begin(), persona::kAllTraits.end(), entry.trait) -
            persona::kAllTraits.begin());
        trait_phrases[slot].push_back(entry.phrase);
    }

    // Subject slots: event subjects per group in D,I,S,C order (incidents
    // first), then non-event subjects round-robin over the groups.
    struct Slot {
        persona::Trait trait;
        bool event;
        bool incident;
    };
    std::vector<Slot> slots;
    slots.reserve(unique_count);
    for (persona::Trait trait : persona::kAllTraits) {
        std::size_t events = group_count(params.events_per_group, trait);
        std::size_t incidents = group_count(params.incidents_per_group, trait);
        for (std::size_t k = 0; k < events; ++k)
            slots.push_back({trait, true, k < incidents});
    }
    for (std::size_t k = 0; slots.size() < unique_count; ++k)
        slots.push_back({persona::kAllTraits[k % persona::kAllTraits.size()], false, false});

    for (const auto& slot : slots) {
        auto idx = static_cast<std::size_t>(
            std::find(persona::kAllTraits.begin(), persona::kAllTraits.end(), slot.trait) -
            persona::kAllTraits.begin());
        if (trait_phrases[idx].empty())
            throw Error(ErrorCode::InfeasibleParams,
                        std::string("lexicon has no entries for trait ") +
                            std::string(persona::trait_name(slot.trait)));
    }

    GeneratedCorpus corpus;
    corpus.manifest.params = params;
    corpus.manifest.unique_count = unique_count;

    constexpr std::int64_t kBaseExtractedAt = 1554197400; // 2019-04-02T09:30:00Z

    for (std::size_t index = 0; index < unique_count; ++index) {
        const Slot& slot = slots[index];
        rng::Stream stream = rng::split_stream(params.seed, index);

        auto trait_idx = static_cast<std::size_t>(
            std::find(persona::kAllTraits.begin(), persona::kAllTraits.end(), slot.trait) -
            persona::kAllTraits.begin());
        const auto& phrases = trait_phrases[trait_idx];

        SubjectTruth truth;
        truth.index = index;
        truth.trait = slot.trait;
        truth.event = slot.event;
        truth.incident = slot.incident;
        truth.name = make_name(stream);
        truth.source_uri = "https://profiles.example/u/" + std::to_string(index);

        RawRecord record;
        record.source_uri = truth.source_uri;
        record.extracted_at = kBaseExtractedAt + static_cast<std::int64_t>(index) * 60;
        record.fields["name"] = truth.name;
        record.fields["region"] = kRegions[stream.index(kRegions.size())];
        record.fields["category"] = kCategories[stream.index(kCategories.size())];
        record.fields["headline"] =
            capitalize(phrases[stream.index(phrases.size())]) + " " +
            kRoles[stream.index(kRoles.size())];

        // summary: 5 sentences, ~2 trait hits each
        std::vector<std::string> summary;
        for (std::size_t k = 0; k < 5; ++k)
            summary.push_back(make_sentence(stream, phrases, 1 + stream.index(2)));

        // one experience: 3 flavor sentences
        std::vector<std::string> description;
        for (std::size_t k = 0; k < 3; ++k)
            description.push_back(make_sentence(stream, phrases, 1 + stream.index(2)));

        if (slot.event) {
            const scan::LeakRule& rule = slot.incident
                                             ? *high_rules[stream.index(high_rules.size())]
                                             : *low_rules[stream.index(low_rules.size())];
            std::string sentence = make_leak_sentence(stream, rule.pattern);
            PlantedPhrase planted;
            planted.phrase = rule.pattern;
            planted.rule_id = rule.id;
            planted.impact = rule.impact;
            if (index % 2 == 0) {
                std::size_t at = stream.index(summary.size() + 1);
                summary.insert(summary.begin() + static_cast<long>(at), sentence);
                planted.field = "summary";
            } else {
                std::size_t at = stream.index(description.size() + 1);
                description.insert(description.begin() + static_cast<long>(at), sentence);
                planted.field = "experience.0.description";
            }
            truth.planted.push_back(std::move(planted));
        }

        record.fields["summary"] = join_sentences(summary);

        int from_year = 2012 + static_cast<int>(stream.index(6));
        int from_month = 1 + static_cast<int>(stream.index(12));
        std::size_t span = 6 + stream.index(35); // months
        int to_year = from_year + static_cast<int>((from_month - 1 + span) / 12);
        int to_month = 1 + static_cast<int>((from_month - 1 + span) % 12);

        record.fields["experience.0.title"] =
            capitalize(kRoles[stream.index(kRoles.size())]);
        record.fields["experience.0.company"] =
            capitalize(kFiller[stream.index(kFiller.size())]) + " " +
            capitalize(kFiller[stream.index(kFiller.size())]);
        record.fields["experience.0.location"] =
            capitalize(kFiller[stream.index(kFiller.size())]) + " City";
        record.fields["experience.0.date_from"] = MonthDate{from_year, from_month}.to_string();
        record.fields["experience.0.date_to"] = MonthDate{to_year, to_month}.to_string();
        record.fields["experience.0.description"] = join_sentences(description);

        corpus.records.push_back(record);

        // duplicates: verbatim copies with perturbed scrape timestamps,
        // spread round-robin over the subjects
        std::size_t copies = params.duplicate_count / unique_count +
                             (index < params.duplicate_count % unique_count ? 1 : 0);
        truth.duplicate_copies = copies;
        for (std::size_t k = 0; k < copies; ++k) {
            RawRecord copy = record;
            copy.extracted_at += static_cast<std::int64_t>(1 + stream.uniform(86400));
            corpus.records.push_back(std::move(copy));
        }

        corpus.manifest.subjects.push_back(std::move(truth));
    }

    rng::Stream shuffle_stream = rng::split_stream(params.seed, 0xFFFFFFFFFFFFFFFFULL);
    shuffle_stream.shuffle(corpus.records);
    return corpus;
}

std::string records_to_csv(const std::vector<RawRecord>& records) {
    const std::vector<std::string> header = {
        "name",
        "headline",
        "summary",
        "region",
        "category",
        "source",
        "extracted_at",
        "experience.0.title",
        "experience.0.company",
        "experience.0.location",
        "experience.0.date_from",
        "experience.0.date_to",
        "experience.0.description",
    };
    std::string out = csv::write_row(header, ',');
    for (const auto& record : records) {
        std::vector<std::string> row;
        row.reserve(header.size());
        for (const auto& column : header) {
            if (column == "source") {
                row.push_back(record.source_uri);
            } else if (column == "extracted_at") {
                row.push_back(text::format_iso8601_utc(record.extracted_at));
            } else {
                auto it = record.fields.find(column);
                row.push_back(it == record.fields.end() ? std::string() : it->second);
            }
        }
        out += csv::write_row(row, ',');
    }
    return out;
}

} // namespace leakscope::synth
