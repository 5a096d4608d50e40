#include "leakscope/persona.hpp"

#include "leakscope/error.hpp"
#include "leakscope/textutil.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <map>
#include <set>

namespace leakscope::persona {

std::string_view trait_name(Trait trait) {
    switch (trait) {
    case Trait::D: return "D";
    case Trait::I: return "I";
    case Trait::S: return "S";
    case Trait::C: return "C";
    }
    return "D";
}

Trait trait_from_name(std::string_view name) {
    if (name == "D" || name == "d") return Trait::D;
    if (name == "I" || name == "i") return Trait::I;
    if (name == "S" || name == "s") return Trait::S;
    if (name == "C" || name == "c") return Trait::C;
    throw Error(ErrorCode::SchemaError, "unknown trait \"" + std::string(name) + "\"");
}

std::string_view risk_tier_name(RiskTier tier) {
    return tier == RiskTier::HighRiskTaking ? "high_risk_taking" : "low_risk_taking";
}

RiskTier risk_tier(Trait dominant) {
    return (dominant == Trait::D || dominant == Trait::I) ? RiskTier::HighRiskTaking
                                                          : RiskTier::LowRiskTaking;
}

double DiscScores::component(Trait trait) const {
    switch (trait) {
    case Trait::D: return d;
    case Trait::I: return i;
    case Trait::S: return s;
    case Trait::C: return c;
    }
    return d;
}

DiscScores finalize_scores(const std::array<double, 4>& raw, std::size_t evidence_tokens) {
    DiscScores scores;
    scores.evidence_tokens = evidence_tokens;

    double sum = 0.0;
    for (double value : raw) sum += value;
    if (sum <= 0.0) {
        scores.d = scores.i = scores.s = scores.c = 0.25;
    } else {
        scores.d = raw[0] / sum;
        scores.i = raw[1] / sum;
        scores.s = raw[2] / sum;
        scores.c = raw[3] / sum;
    }

    scores.dominant = Trait::D;
    double best = scores.d;
    for (Trait trait : kAllTraits) {
        if (scores.component(trait) > best) {
            best = scores.component(trait);
            scores.dominant = trait;
        }
    }
    scores.tier = risk_tier(scores.dominant);
    return scores;
}

std::string_view style_feature_name(StyleFeatureKind kind) {
    switch (kind) {
    case StyleFeatureKind::MeanSentenceLength: return "mean_sentence_length";
    case StyleFeatureKind::ExclamationRate: return "exclamation_rate";
    case StyleFeatureKind::FirstPersonSingularRate: return "first_person_singular_rate";
    case StyleFeatureKind::ImperativeRate: return "imperative_rate";
    case StyleFeatureKind::HedgeWordRate: return "hedge_word_rate";
    }
    return "mean_sentence_length";
}

StyleFeatureKind style_feature_from_name(std::string_view name) {
    if (name == "mean_sentence_length") return StyleFeatureKind::MeanSentenceLength;
    if (name == "exclamation_rate") return StyleFeatureKind::ExclamationRate;
    if (name == "first_person_singular_rate") return StyleFeatureKind::FirstPersonSingularRate;
    if (name == "imperative_rate") return StyleFeatureKind::ImperativeRate;
    if (name == "hedge_word_rate") return StyleFeatureKind::HedgeWordRate;
    throw Error(ErrorCode::SchemaError, "unknown style feature \"" + std::string(name) + "\"");
}

namespace {

std::vector<std::string> split_tabs(std::string_view line) {
    std::vector<std::string> cells;
    std::size_t start = 0;
    while (true) {
        std::size_t tab = line.find('\t', start);
        if (tab == std::string_view::npos) {
            cells.emplace_back(line.substr(start));
            break;
        }
        cells.emplace_back(line.substr(start, tab - start));
        start = tab + 1;
    }
    return cells;
}

double parse_weight(const std::string& cell, std::size_t line_no) {
    char* end = nullptr;
    double value = std::strtod(cell.c_str(), &end);
    if (end != cell.c_str() + cell.size() || cell.empty() || !(value > 0.0))
        throw Error(ErrorCode::SchemaError, "weight must be a positive number, got \"" + cell + "\"",
                    static_cast<long long>(line_no));
    return value;
}

} // namespace

TraitLexicon parse_lexicon(std::string_view data) {
    TraitLexicon lexicon;
    enum class Section { None, Entries, Features } section = Section::None;
    std::set<std::string> seen_phrases;
    std::set<StyleFeatureKind> seen_features;

    std::size_t line_no = 0;
    std::size_t pos = 0;
    while (pos <= data.size()) {
        std::size_t nl = data.find('\n', pos);
        std::string_view line =
            nl == std::string_view::npos ? data.substr(pos) : data.substr(pos, nl - pos);
        pos = nl == std::string_view::npos ? data.size() + 1 : nl + 1;
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
        if (line.empty() || line[0] == '#') continue;
        if (line == "[entries]") {
            section = Section::Entries;
            continue;
        }
        if (line == "[features]") {
            section = Section::Features;
            continue;
        }
        if (section == Section::None)
            throw Error(ErrorCode::SchemaError, "entry before any [entries]/[features] section",
                        static_cast<long long>(line_no));

        auto cells = split_tabs(line);
        if (cells.size() != 3)
            throw Error(ErrorCode::SchemaError,
                        "line needs 3 tab-separated fields, got " + std::to_string(cells.size()),
                        static_cast<long long>(line_no));

        try {
            if (section == Section::Entries) {
                LexiconEntry entry;
                entry.phrase = text::canonicalize(cells[0]);
                entry.trait = trait_from_name(text::canonicalize(cells[1]));
                entry.weight = parse_weight(cells[2], line_no);
                if (entry.phrase.empty() || text::pattern_tokens(entry.phrase).empty())
                    throw Error(ErrorCode::SchemaError, "empty phrase",
                                static_cast<long long>(line_no));
                if (!seen_phrases.insert(text::to_lower_ascii(entry.phrase)).second)
                    throw Error(ErrorCode::SchemaError,
                                "duplicate phrase \"" + entry.phrase + "\"",
                                static_cast<long long>(line_no));
                lexicon.entries.push_back(std::move(entry));
            } else {
                StyleFeature feature;
                feature.kind = style_feature_from_name(text::canonicalize(cells[0]));
                feature.trait = trait_from_name(text::canonicalize(cells[1]));
                feature.weight = parse_weight(cells[2], line_no);
                if (!seen_features.insert(feature.kind).second)
                    throw Error(ErrorCode::SchemaError,
                                "duplicate style feature \"" + cells[0] + "\"",
                                static_cast<long long>(line_no));
                lexicon.style_features.push_back(feature);
            }
        } catch (const Error& e) {
            if (e.position() >= 0) throw;
            throw Error(ErrorCode::SchemaError, e.what(), static_cast<long long>(line_no));
        }
    }
    return lexicon;
}

namespace {

const std::set<std::string_view> kFirstPerson = {"i", "me", "my", "mine", "myself"};

const std::set<std::string_view> kHedgeWords = {
    "maybe",  "perhaps", "possibly", "likely",        "somewhat",
    "fairly", "rather",  "roughly",  "approximately", "probably",
};

const std::set<std::string_view> kImperativeStarters = {
    "make", "do",   "take", "get",    "go",      "call",  "let",   "join",  "follow", "deliver",
    "drive", "lead", "push", "win",   "act",     "decide", "execute", "contact", "build", "start",
};

struct StyleCounts {
    std::size_t tokens = 0;
    std::size_t sentences = 0;
    std::size_t exclamations = 0;
    std::size_t first_person = 0;
    std::size_t hedges = 0;
    std::size_t imperatives = 0;
};

void tally_style(std::string_view sample, const std::vector<text::Token>& tokens,
                 StyleCounts& counts) {
    counts.tokens += tokens.size();
    counts.sentences += text::count_sentences(sample);
    for (char ch : sample)
        if (ch == '!') ++counts.exclamations;
    for (const auto& token : tokens) {
        if (kFirstPerson.contains(token.lower)) ++counts.first_person;
        if (kHedgeWords.contains(token.lower)) ++counts.hedges;
    }

    // sentence-initial tokens: after a terminator or at the start
    bool at_sentence_start = true;
    std::size_t cursor = 0;
    for (const auto& token : tokens) {
        for (std::size_t k = cursor; k < token.begin; ++k) {
            char ch = sample[k];
            if (ch == '.' || ch == '!' || ch == '?') at_sentence_start = true;
        }
        if (at_sentence_start && kImperativeStarters.contains(token.lower)) ++counts.imperatives;
        at_sentence_start = false;
        cursor = token.end;
    }
}

double style_value(StyleFeatureKind kind, const StyleCounts& counts) {
    double tokens = static_cast<double>(counts.tokens);
    double sentences = static_cast<double>(counts.sentences);
    switch (kind) {
    case StyleFeatureKind::MeanSentenceLength:
        return sentences > 0 ? tokens / sentences : 0.0;
    case StyleFeatureKind::ExclamationRate:
        return tokens > 0 ? counts.exclamations / tokens : 0.0;
    case StyleFeatureKind::FirstPersonSingularRate:
        return tokens > 0 ? counts.first_person / tokens : 0.0;
    case StyleFeatureKind::ImperativeRate:
        return sentences > 0 ? counts.imperatives / sentences : 0.0;
    case StyleFeatureKind::HedgeWordRate:
        return tokens > 0 ? counts.hedges / tokens : 0.0;
    }
    return 0.0;
}

} // namespace

DiscScores estimate_disc(const std::vector<std::string>& texts,
                         const TraitLexicon& lexicon,
                         std::size_t min_tokens) {
    std::vector<std::vector<text::Token>> token_lists;
    token_lists.reserve(texts.size());
    StyleCounts counts;
    for (const auto& sample : texts) {
        token_lists.push_back(text::tokenize(sample));
        tally_style(sample, token_lists.back(), counts);
    }

    if (counts.tokens < min_tokens)
        throw Error(ErrorCode::InsufficientText,
                    "sample has " + std::to_string(counts.tokens) + " tokens, need at least " +
                        std::to_string(min_tokens));

    std::array<double, 4> raw = {0.0, 0.0, 0.0, 0.0};
    auto slot = [](Trait trait) {
        return static_cast<std::size_t>(
            std::find(kAllTraits.begin(), kAllTraits.end(), trait) - kAllTraits.begin());
    };

    // frequency-normalized lexicon evidence
    for (const auto& entry : lexicon.entries) {
        auto pattern = text::pattern_tokens(entry.phrase);
        std::size_t hits = 0;
        for (const auto& tokens : token_lists) hits += text::find_phrase(tokens, pattern).size();
        if (hits > 0)
            raw[slot(entry.trait)] +=
                entry.weight * static_cast<double>(hits) / static_cast<double>(counts.tokens);
    }

    for (const auto& feature : lexicon.style_features)
        raw[slot(feature.trait)] += feature.weight * style_value(feature.kind, counts);

    return finalize_scores(raw, counts.tokens);
}

std::array<double, 4> map_bigfive_raw(const BigFiveScores& scores) {
    return {
        (scores.openness + scores.neuroticism) / 2.0, // D
        scores.extraversion,                          // I
        scores.agreeableness,                         // S
        scores.conscientiousness,                     // C
    };
}

DiscScores map_bigfive_to_disc(const BigFiveScores& scores) {
    const std::pair<const char*, double> components[] = {
        {"openness", scores.openness},
        {"conscientiousness", scores.conscientiousness},
        {"extraversion", scores.extraversion},
        {"agreeableness", scores.agreeableness},
        {"neuroticism", scores.neuroticism},
    };
    for (const auto& [name, value] : components) {
        if (!(value >= 0.0 && value <= 1.0))
            throw Error(ErrorCode::OutOfRange,
                        std::string(name) + " = " + std::to_string(value) + " outside [0, 1]");
    }
    return finalize_scores(map_bigfive_raw(scores), 0);
}

} // namespace leakscope::persona
