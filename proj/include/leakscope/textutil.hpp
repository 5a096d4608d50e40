#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace leakscope::text {

// Canonical text form used across the pipeline: UTF-8 with canonical
// composition applied to the common Latin combining sequences, runs of
// whitespace collapsed to single spaces, ends trimmed.
std::string canonicalize(std::string_view raw);

std::string to_lower_ascii(std::string_view s);

// One word of canonicalized text. Offsets are byte positions into the
// scanned string; `lower` is the ASCII-lowercased token text.
struct Token {
    std::size_t begin = 0;
    std::size_t end = 0;
    std::string lower;
};

// Tokens are maximal runs of ASCII alphanumerics or non-ASCII bytes.
// Hyphens, apostrophes and all punctuation separate tokens, so
// "full-time" and "full time" tokenize identically.
std::vector<Token> tokenize(std::string_view s);

// Splits a pattern into lowercased token texts ("result oriented" -> 2).
std::vector<std::string> pattern_tokens(std::string_view pattern);

struct PhraseMatch {
    std::size_t begin = 0; // byte offset of first token
    std::size_t end = 0;   // byte offset one past last token
};

// Case-insensitive whole-token phrase matching; returns non-overlapping
// matches left to right. `pattern` must tokenize to at least one token.
std::vector<PhraseMatch> find_phrase(const std::vector<Token>& tokens,
                                     const std::vector<std::string>& pattern);

bool contains_phrase(std::string_view haystack, std::string_view pattern);

// Sentence count for style features: segments terminated by . ! or ? with
// trailing text counting as one more sentence. Empty text -> 0.
std::size_t count_sentences(std::string_view s);

std::string format_iso8601_utc(std::int64_t epoch_seconds);

// Accepts "YYYY-MM-DDTHH:MM:SSZ"; returns false on any other shape.
bool parse_iso8601_utc(std::string_view s, std::int64_t& epoch_seconds);

std::string hex_encode(const unsigned char* data, std::size_t len);

} // namespace leakscope::text
