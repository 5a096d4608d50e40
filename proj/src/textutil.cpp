#include "leakscope/textutil.hpp"

#include <algorithm>
#include <array>
#include <cctype>
#include <cstdio>

namespace leakscope::text {

namespace {

struct Composition {
    char32_t base;
    char32_t combining;
    char32_t composed;
};

// Canonical composition pairs for the frequent Latin combining marks:
// grave U+0300, acute U+0301, circumflex U+0302, tilde U+0303,
// diaeresis U+0308, ring above U+030A, cedilla U+0327.
constexpr std::array<Composition, 59> kCompositions = {{
    {U'A', 0x0300, 0x00C0}, {U'A', 0x0301, 0x00C1}, {U'A', 0x0302, 0x00C2},
    {U'A', 0x0303, 0x00C3}, {U'A', 0x0308, 0x00C4}, {U'A', 0x030A, 0x00C5},
    {U'C', 0x0327, 0x00C7},
    {U'E', 0x0300, 0x00C8}, {U'E', 0x0301, 0x00C9}, {U'E', 0x0302, 0x00CA},
    {U'E', 0x0308, 0x00CB},
    {U'I', 0x0300, 0x00CC}, {U'I', 0x0301, 0x00CD}, {U'I', 0x0302, 0x00CE},
    {U'I', 0x0308, 0x00CF},
    {U'N', 0x0303, 0x00D1},
    {U'O', 0x0300, 0x00D2}, {U'O', 0x0301, 0x00D3}, {U'O', 0x0302, 0x00D4},
    {U'O', 0x0303, 0x00D5}, {U'O', 0x0308, 0x00D6},
    {U'U', 0x0300, 0x00D9}, {U'U', 0x0301, 0x00DA}, {U'U', 0x0302, 0x00DB},
    {U'U', 0x0308, 0x00DC},
    {U'Y', 0x0301, 0x00DD},
    {U'a', 0x0300, 0x00E0}, {U'a', 0x0301, 0x00E1}, {U'a', 0x0302, 0x00E2},
    {U'a', 0x0303, 0x00E3}, {U'a', 0x0308, 0x00E4}, {U'a', 0x030A, 0x00E5},
    {U'c', 0x0327, 0x00E7},
    {U'e', 0x0300, 0x00E8}, {U'e', 0x0301, 0x00E9}, {U'e', 0x0302, 0x00EA},
    {U'e', 0x0308, 0x00EB},
    {U'i', 0x0300, 0x00EC}, {U'i', 0x0301, 0x00ED}, {U'i', 0x0302, 0x00EE},
    {U'i', 0x0308, 0x00EF},
    {U'n', 0x0303, 0x00F1},
    {U'o', 0x0300, 0x00F2}, {U'o', 0x0301, 0x00F3}, {U'o', 0x0302, 0x00F4},
    {U'o', 0x0303, 0x00F5}, {U'o', 0x0308, 0x00F6},
    {U'u', 0x0300, 0x00F9}, {U'u', 0x0301, 0x00FA}, {U'u', 0x0302, 0x00FB},
    {U'u', 0x0308, 0x00FC},
    {U'y', 0x0301, 0x00FD}, {U'y', 0x0308, 0x00FF},
    {U'S', 0x0327, 0x015E}, {U's', 0x0327, 0x015F},
    {U'G', 0x0306, 0x011E}, {U'g', 0x0306, 0x011F},
    {U'Z', 0x030C, 0x017D}, {U'z', 0x030C, 0x017E},
}};

bool compose(char32_t base, char32_t combining, char32_t& out) {
    for (const auto& entry : kCompositions) {
        if (entry.base == base && entry.combining == combining) {
            out = entry.composed;
            return true;
        }
    }
    return false;
}

bool is_space_cp(char32_t cp) {
    return cp == U' ' || cp == U'\t' || cp == U'\n' || cp == U'\r' || cp == U'\f' ||
           cp == U'\v' || cp == 0x00A0 || cp == 0x2028 || cp == 0x2029;
}

// Decodes one UTF-8 sequence; malformed bytes yield U+FFFD and advance by one.
char32_t next_codepoint(std::string_view s, std::size_t& pos) {
    const auto byte = [&](std::size_t i) { return static_cast<unsigned char>(s[i]); };
    unsigned char b0 = byte(pos);
    if (b0 < 0x80) {
        ++pos;
        return b0;
    }
    auto cont = [&](std::size_t i) {
        return i < s.size() && (byte(i) & 0xC0) == 0x80;
    };
    if ((b0 & 0xE0) == 0xC0 && cont(pos + 1)) {
        char32_t cp = (char32_t(b0 & 0x1F) << 6) | (byte(pos + 1) & 0x3F);
        pos += 2;
        return cp >= 0x80 ? cp : 0xFFFD;
    }
    if ((b0 & 0xF0) == 0xE0 && cont(pos + 1) && cont(pos + 2)) {
        char32_t cp = (char32_t(b0 & 0x0F) << 12) | (char32_t(byte(pos + 1) & 0x3F) << 6) |
                      (byte(pos + 2) & 0x3F);
        pos += 3;
        return cp >= 0x800 ? cp : 0xFFFD;
    }
    if ((b0 & 0xF8) == 0xF0 && cont(pos + 1) && cont(pos + 2) && cont(pos + 3)) {
        char32_t cp = (char32_t(b0 & 0x07) << 18) | (char32_t(byte(pos + 1) & 0x3F) << 12) |
                      (char32_t(byte(pos + 2) & 0x3F) << 6) | (byte(pos + 3) & 0x3F);
        pos += 4;
        return (cp >= 0x10000 && cp <= 0x10FFFF) ? cp : 0xFFFD;
    }
    ++pos;
    return 0xFFFD;
}

void append_utf8(std::string& out, char32_t cp) {
    if (cp < 0x80) {
        out.push_back(static_cast<char>(cp));
    } else if (cp < 0x800) {
        out.push_back(static_cast<char>(0xC0 | (cp >> 6)));
        out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
    } else if (cp < 0x10000) {
        out.push_back(static_cast<char>(0xE0 | (cp >> 12)));
        out.push_back(static_cast<char>(0x80 | ((cp >> 6) & 0x3F)));
        out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
    } else {
        out.push_back(static_cast<char>(0xF0 | (cp >> 18)));
        out.push_back(static_cast<char>(0x80 | ((cp >> 12) & 0x3F)));
        out.push_back(static_cast<char>(0x80 | ((cp >> 6) & 0x3F)));
        out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
    }
}

constexpr int kDaysPerMonth[] = {31, 28, 31, 30, 31, 30, 31, 31, 30, 31, 30, 31};

bool is_leap(int y) { return (y % 4 == 0 && y % 100 != 0) || y % 400 == 0; }

// Days since 1970-01-01 for a civil date (Howard Hinnant's algorithm).
std::int64_t days_from_civil(int y, int m, int d) {
    y -= m <= 2;
    const std::int64_t era = (y >= 0 ? y : y - 399) / 400;
    const unsigned yoe = static_cast<unsigned>(y - era * 400);
    const unsigned doy = (153u * static_cast<unsigned>(m + (m > 2 ? -3 : 9)) + 2) / 5 +
                         static_cast<unsigned>(d) - 1;
    const unsigned doe = yoe * 365 + yoe / 4 - yoe / 100 + doy;
    return era * 146097 + static_cast<std::int64_t>(doe) - 719468;
}

void civil_from_days(std::int64_t z, int& y, int& m, int& d) {
    z += 719468;
    const std::int64_t era = (z >= 0 ? z : z - 146096) / 146097;
    const unsigned doe = static_cast<unsigned>(z - era * 146097);
    const unsigned yoe = (doe - doe / 1460 + doe / 36524 - doe / 146096) / 365;
    const std::int64_t yy = static_cast<std::int64_t>(yoe) + era * 400;
    const unsigned doy = doe - (365 * yoe + yoe / 4 - yoe / 100);
    const unsigned mp = (5 * doy + 2) / 153;
    d = static_cast<int>(doy - (153 * mp + 2) / 5 + 1);
    m = static_cast<int>(mp < 10 ? mp + 3 : mp - 9);
    y = static_cast<int>(yy + (m <= 2));
}

} // namespace

std::string canonicalize(std::string_view raw) {
    // Decode, compose combining marks, collapse whitespace, trim.
    std::u32string points;
    points.reserve(raw.size());
    std::size_t pos = 0;
    while (pos < raw.size()) points.push_back(next_codepoint(raw, pos));

    std::u32string composed;
    composed.reserve(points.size());
    for (char32_t cp : points) {
        char32_t merged;
        if (!composed.empty() && compose(composed.back(), cp, merged)) {
            composed.back() = merged;
        } else {
            composed.push_back(cp);
        }
    }

    std::string out;
    out.reserve(raw.size());
    bool pending_space = false;
    bool seen_content = false;
    for (char32_t cp : composed) {
        if (is_space_cp(cp)) {
            pending_space = seen_content;
            continue;
        }
        if (pending_space) {
            out.push_back(' ');
            pending_space = false;
        }
        append_utf8(out, cp);
        seen_content = true;
    }
    return out;
}

std::string to_lower_ascii(std::string_view s) {
    std::string out(s);
    std::transform(out.begin(), out.end(), out.begin(), [](unsigned char ch) {
        return static_cast<char>(std::tolower(ch));
    });
    return out;
}

std::vector<Token> tokenize(std::string_view s) {
    std::vector<Token> tokens;
    const auto is_token_byte = [](unsigned char ch) {
        return std::isalnum(ch) != 0 || ch >= 0x80;
    };
    std::size_t i = 0;
    while (i < s.size()) {
        if (!is_token_byte(static_cast<unsigned char>(s[i]))) {
            ++i;
            continue;
        }
        std::size_t begin = i;
        while (i < s.size() && is_token_byte(static_cast<unsigned char>(s[i]))) ++i;
        Token token;
        token.begin = begin;
        token.end = i;
        token.lower = to_lower_ascii(s.substr(begin, i - begin));
        tokens.push_back(std::move(token));
    }
    return tokens;
}

std::vector<std::string> pattern_tokens(std::string_view pattern) {
    std::vector<std::string> out;
    for (const auto& token : tokenize(pattern)) out.push_back(token.lower);
    return out;
}

std::vector<PhraseMatch> find_phrase(const std::vector<Token>& tokens,
                                     const std::vector<std::string>& pattern) {
    std::vector<PhraseMatch> matches;
    if (pattern.empty() || tokens.size() < pattern.size()) return matches;
    std::size_t i = 0;
    while (i + pattern.size() <= tokens.size()) {
        bool hit = true;
        for (std::size_t k = 0; k < pattern.size(); ++k) {
            if (tokens[i + k].lower != pattern[k]) {
                hit = false;
                break;
            }
        }
        if (hit) {
            matches.push_back({tokens[i].begin, tokens[i + pattern.size() - 1].end});
            i += pattern.size(); // non-overlapping, greedy left to right
        } else {
            ++i;
        }
    }
    return matches;
}

bool contains_phrase(std::string_view haystack, std::string_view pattern) {
    return !find_phrase(tokenize(haystack), pattern_tokens(pattern)).empty();
}

std::size_t count_sentences(std::string_view s) {
    std::size_t count = 0;
    bool in_segment = false;
    for (char ch : s) {
        if (ch == '.' || ch == '!' || ch == '?') {
            if (in_segment) ++count;
            in_segment = false;
        } else if (!std::isspace(static_cast<unsigned char>(ch))) {
            in_segment = true;
        }
    }
    if (in_segment) ++count;
    return count;
}

std::string format_iso8601_utc(std::int64_t epoch_seconds) {
    std::int64_t days = epoch_seconds / 86400;
    std::int64_t rem = epoch_seconds % 86400;
    if (rem < 0) {
        rem += 86400;
        --days;
    }
    int y, m, d;
    civil_from_days(days, y, m, d);
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%04d-%02d-%02dT%02d:%02d:%02dZ", y, m, d,
                  static_cast<int>(rem / 3600), static_cast<int>((rem / 60) % 60),
                  static_cast<int>(rem % 60));
    return buf;
}

bool parse_iso8601_utc(std::string_view s, std::int64_t& epoch_seconds) {
    if (s.size() != 20 || s[4] != '-' || s[7] != '-' || s[10] != 'T' || s[13] != ':' ||
        s[16] != ':' || s[19] != 'Z') {
        return false;
    }
    auto digits = [&](std::size_t begin, std::size_t len, int& out) {
        out = 0;
        for (std::size_t i = begin; i < begin + len; ++i) {
            if (!std::isdigit(static_cast<unsigned char>(s[i]))) return false;
            out = out * 10 + (s[i] - '0');
        }
        return true;
    };
    int y, mo, d, h, mi, se;
    if (!digits(0, 4, y) || !digits(5, 2, mo) || !digits(8, 2, d) || !digits(11, 2, h) ||
        !digits(14, 2, mi) || !digits(17, 2, se)) {
        return false;
    }
    if (mo < 1 || mo > 12 || h > 23 || mi > 59 || se > 60) return false;
    int dim = kDaysPerMonth[mo - 1] + ((mo == 2 && is_leap(y)) ? 1 : 0);
    if (d < 1 || d > dim) return false;
    epoch_seconds = days_from_civil(y, mo, d) * 86400 + h * 3600 + mi * 60 + se;
    return true;
}

std::string hex_encode(const unsigned char* data, std::size_t len) {
    static const char* digits = "0123456789abcdef";
    std::string out;
    out.reserve(len * 2);
    for (std::size_t i = 0; i < len; ++i) {
        out.push_back(digits[data[i] >> 4]);
        out.push_back(digits[data[i] & 0x0F]);
    }
    return out;
}

} // namespace leakscope::text
