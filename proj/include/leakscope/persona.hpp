#pragma once

#include <array>
#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

namespace leakscope::persona {

enum class Trait { D, I, S, C };

inline constexpr std::array<Trait, 4> kAllTraits = {Trait::D, Trait::I, Trait::S, Trait::C};

std::string_view trait_name(Trait trait);
Trait trait_from_name(std::string_view name);

enum class RiskTier { HighRiskTaking, LowRiskTaking };

std::string_view risk_tier_name(RiskTier tier);

// Dominant D and I profiles carry the high-risk-taking prior; S and C the
// low-risk one. The tier encodes the hypothesis, not the finding.
RiskTier risk_tier(Trait dominant);

struct DiscScores {
    double d = 0.0;
    double i = 0.0;
    double s = 0.0;
    double c = 0.0;
    Trait dominant = Trait::D;
    RiskTier tier = RiskTier::HighRiskTaking;
    std::size_t evidence_tokens = 0;

    double component(Trait trait) const;
    bool operator==(const DiscScores&) const = default;
};

// Normalizes raw per-trait evidence to a distribution, derives the dominant
// trait (argmax, ties break D > I > S > C) and the risk tier. Zero raw
// evidence yields the uniform distribution.
DiscScores finalize_scores(const std::array<double, 4>& raw, std::size_t evidence_tokens);

struct BigFiveScores {
    double openness = 0.0;
    double conscientiousness = 0.0;
    double extraversion = 0.0;
    double agreeableness = 0.0;
    double neuroticism = 0.0;
};

struct LexiconEntry {
    std::string phrase;
    Trait trait;
    double weight; // > 0
};

// Style features recognized by estimate_disc.
enum class StyleFeatureKind {
    MeanSentenceLength,
    ExclamationRate,
    FirstPersonSingularRate,
    ImperativeRate,
    HedgeWordRate,
};

std::string_view style_feature_name(StyleFeatureKind kind);
StyleFeatureKind style_feature_from_name(std::string_view name);

struct StyleFeature {
    StyleFeatureKind kind;
    Trait trait;
    double weight; // > 0
};

struct TraitLexicon {
    std::vector<LexiconEntry> entries;
    std::vector<StyleFeature> style_features;
};

// Parses the shipped lexicon format: [entries] phrase/trait/weight lines and
// a [features] section with feature/trait/weight lines, tab separated.
// Throws SchemaError(line).
TraitLexicon parse_lexicon(std::string_view data);

inline constexpr std::size_t kDefaultMinTokens = 30;

// Lexicon+style linear scorer over a text sample. Frequency-normalized so a
// duplicated corpus scores identically. Throws InsufficientText below
// min_tokens.
DiscScores estimate_disc(const std::vector<std::string>& texts,
                         const TraitLexicon& lexicon,
                         std::size_t min_tokens = kDefaultMinTokens);

// Raw trait evidence of the Big-Five mapping: c from conscientiousness,
// s from agreeableness, i from extraversion, d from the mean of openness and
// neuroticism. Order matches kAllTraits.
std::array<double, 4> map_bigfive_raw(const BigFiveScores& scores);

// Throws OutOfRange when any component leaves [0, 1].
DiscScores map_bigfive_to_disc(const BigFiveScores& scores);

} // namespace leakscope::persona
