#include "leakscope/ingest.hpp"

#include "leakscope/csv.hpp"
#include "leakscope/digest.hpp"
#include "leakscope/error.hpp"
#include "leakscope/textutil.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>

namespace leakscope::ingest {

namespace {

// ---------------------------------------------------------------------------
// Minimal markup scanner: enough structure for class-addressed export pages.
// ---------------------------------------------------------------------------

struct Tag {
    std::string name;                          // lowercased
    std::map<std::string, std::string> attrs;  // lowercased keys
    bool closing = false;
    bool self_closing = false;
    std::size_t begin = 0; // offset of '<'
    std::size_t end = 0;   // offset one past '>'
};

bool is_name_char(char ch) {
    return std::isalnum(static_cast<unsigned char>(ch)) || ch == '-' || ch == '_' || ch == ':';
}

const char* kVoidTags[] = {"br", "hr", "img", "input", "meta", "link", "wbr", "source"};

bool is_void_tag(const std::string& name) {
    return std::find(std::begin(kVoidTags), std::end(kVoidTags), name) != std::end(kVoidTags);
}

std::string decode_entities(std::string_view s) {
    std::string out;
    out.reserve(s.size());
    std::size_t i = 0;
    while (i < s.size()) {
        if (s[i] != '&') {
            out.push_back(s[i++]);
            continue;
        }
        std::size_t semi = s.find(';', i + 1);
        if (semi == std::string_view::npos || semi - i > 10) {
            out.push_back(s[i++]);
            continue;
        }
        std::string_view body = s.substr(i + 1, semi - i - 1);
        if (body == "amp") out += '&';
        else if (body == "lt") out += '<';
        else if (body == "gt") out += '>';
        else if (body == "quot") out += '"';
        else if (body == "apos") out += '\'';
        else if (body == "nbsp") out += ' ';
        else if (!body.empty() && body[0] == '#') {
            std::uint32_t cp = 0;
            bool ok = false;
            if (body.size() > 1 && (body[1] == 'x' || body[1] == 'X')) {
                auto res = std::from_chars(body.data() + 2, body.data() + body.size(), cp, 16);
                ok = res.ec == std::errc{} && res.ptr == body.data() + body.size();
            } else {
                auto res = std::from_chars(body.data() + 1, body.data() + body.size(), cp, 10);
                ok = res.ec == std::errc{} && res.ptr == body.data() + body.size();
            }
            if (!ok || cp == 0 || cp > 0x10FFFF) {
                out.push_back(s[i++]);
                continue;
            }
            // UTF-8 encode
            if (cp < 0x80) out.push_back(static_cast<char>(cp));
            else if (cp < 0x800) {
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
        } else {
            out.push_back(s[i++]);
            continue;
        }
        i = semi + 1;
    }
    return out;
}

std::vector<Tag> scan_tags(std::string_view html) {
    std::vector<Tag> tags;
    std::size_t i = 0;
    while (i < html.size()) {
        std::size_t lt = html.find('<', i);
        if (lt == std::string_view::npos) break;
        std::size_t j = lt + 1;
        if (j >= html.size()) break;

        if (html.compare(lt, 4, "<!--") == 0) {
            std::size_t close = html.find("-->", lt + 4);
            i = close == std::string_view::npos ? html.size() : close + 3;
            continue;
        }
        if (html[j] == '!' || html[j] == '?') { // doctype / processing instruction
            std::size_t gt = html.find('>', j);
            i = gt == std::string_view::npos ? html.size() : gt + 1;
            continue;
        }

        Tag tag;
        tag.begin = lt;
        if (html[j] == '/') {
            tag.closing = true;
            ++j;
        }
        std::size_t name_start = j;
        while (j < html.size() && is_name_char(html[j])) ++j;
        if (j == name_start) { // stray '<'
            i = lt + 1;
            continue;
        }
        tag.name = text::to_lower_ascii(html.substr(name_start, j - name_start));

        // attributes
        while (j < html.size() && html[j] != '>') {
            while (j < html.size() && std::isspace(static_cast<unsigned char>(html[j]))) ++j;
            if (j < html.size() && html[j] == '/') {
                tag.self_closing = true;
                ++j;
                continue;
            }
            if (j >= html.size() || html[j] == '>') break;
            std::size_t key_start = j;
            while (j < html.size() && is_name_char(html[j])) ++j;
            if (j == key_start) { ++j; continue; }
            std::string key = text::to_lower_ascii(html.substr(key_start, j - key_start));
            std::string value;
            if (j < html.size() && html[j] == '=') {
                ++j;
                if (j < html.size() && (html[j] == '"' || html[j] == '\'')) {
                    char quote = html[j++];
                    std::size_t val_start = j;
                    while (j < html.size() && html[j] != quote) ++j;
                    value = decode_entities(html.substr(val_start, j - val_start));
                    if (j < html.size()) ++j;
                } else {
                    std::size_t val_start = j;
                    while (j < html.size() && !std::isspace(static_cast<unsigned char>(html[j])) &&
                           html[j] != '>')
                        ++j;
                    value = decode_entities(html.substr(val_start, j - val_start));
                }
            }
            tag.attrs.emplace(std::move(key), std::move(value));
        }
        if (j < html.size()) ++j; // consume '>'
        tag.end = j;
        if (is_void_tag(tag.name)) tag.self_closing = true;
        tags.push_back(std::move(tag));
        i = j;
    }
    return tags;
}

bool has_class(const Tag& tag, const std::string& cls) {
    auto it = tag.attrs.find("class");
    if (it == tag.attrs.end()) return false;
    for (const auto& token : text::tokenize(it->second)) {
        std::string_view raw(it->second.data() + token.begin, token.end - token.begin);
        if (raw == cls) return true;
    }
    // class names may contain characters the tokenizer splits on; also try
    // a direct whitespace split.
    std::size_t pos = 0;
    const std::string& val = it->second;
    while (pos < val.size()) {
        while (pos < val.size() && val[pos] == ' ') ++pos;
        std::size_t end = val.find(' ', pos);
        if (end == std::string::npos) end = val.size();
        if (val.compare(pos, end - pos, cls) == 0) return true;
        pos = end;
    }
    return false;
}

// Index of the closing tag matching tags[open], or tags.size() when
// unbalanced (treat rest of document as the element body).
std::size_t matching_close(const std::vector<Tag>& tags, std::size_t open) {
    int depth = 0;
    for (std::size_t k = open; k < tags.size(); ++k) {
        const Tag& t = tags[k];
        if (t.name != tags[open].name || t.self_closing) continue;
        if (!t.closing) ++depth;
        else if (--depth == 0) return k;
    }
    return tags.size();
}

std::string inner_text(std::string_view html, const std::vector<Tag>& tags,
                       std::size_t open, std::size_t close) {
    std::size_t begin = tags[open].end;
    std::size_t end = close < tags.size() ? tags[close].begin : html.size();
    std::string out;
    std::size_t cursor = begin;
    for (std::size_t k = open + 1; k < close && k < tags.size(); ++k) {
        if (tags[k].begin > cursor) out.append(html.substr(cursor, tags[k].begin - cursor));
        cursor = std::max(cursor, tags[k].end);
    }
    if (end > cursor) out.append(html.substr(cursor, end - cursor));
    return decode_entities(out);
}

} // namespace

HtmlIngestResult ingest_html_export(std::string_view document,
                                    std::string_view source_name,
                                    const SelectorProfile& selectors) {
    HtmlIngestResult result;
    if (text::canonicalize(document).empty()) return result;

    std::vector<Tag> tags = scan_tags(document);
    bool any_element = std::any_of(tags.begin(), tags.end(),
                                   [](const Tag& t) { return !t.closing; });
    if (!any_element)
        throw Error(ErrorCode::NotMarkup, "input has no markup structure");

    for (std::size_t i = 0; i < tags.size(); ++i) {
        const Tag& card = tags[i];
        if (card.closing || card.self_closing || !has_class(card, selectors.card_class))
            continue;
        std::size_t card_close = matching_close(tags, i);

        RawRecord record;
        if (auto it = card.attrs.find("data-source"); it != card.attrs.end() && !it->second.empty())
            record.source_uri = it->second;
        else
            record.source_uri = std::string(source_name);
        if (auto it = card.attrs.find("data-extracted-at"); it != card.attrs.end()) {
            std::int64_t epoch = 0;
            if (text::parse_iso8601_utc(it->second, epoch)) record.extracted_at = epoch;
        }

        std::size_t experience_index = 0;
        for (std::size_t k = i + 1; k < card_close; ++k) {
            const Tag& child = tags[k];
            if (child.closing || child.self_closing) continue;

            if (has_class(child, selectors.experience_class)) {
                std::size_t exp_close = matching_close(tags, k);
                std::string prefix = "experience." + std::to_string(experience_index) + ".";
                for (std::size_t m = k + 1; m < exp_close; ++m) {
                    const Tag& leaf = tags[m];
                    if (leaf.closing || leaf.self_closing) continue;
                    for (const auto& [cls, field] : selectors.experience_fields) {
                        if (!has_class(leaf, cls)) continue;
                        std::size_t leaf_close = matching_close(tags, m);
                        std::string value =
                            text::canonicalize(inner_text(document, tags, m, leaf_close));
                        if (!value.empty()) record.fields.emplace(prefix + field, value);
                        break;
                    }
                }
                ++experience_index;
                k = std::min(exp_close, tags.size() - 1);
                continue;
            }

            for (const auto& [cls, field] : selectors.card_fields) {
                if (!has_class(child, cls)) continue;
                std::size_t child_close = matching_close(tags, k);
                std::string value =
                    text::canonicalize(inner_text(document, tags, k, child_close));
                if (!value.empty() && !record.fields.contains(field))
                    record.fields.emplace(field, value);
                break;
            }
        }

        auto name_it = record.fields.find("name");
        if (name_it == record.fields.end() || text::canonicalize(name_it->second).empty())
            ++result.skipped;
        else
            result.records.push_back(std::move(record));

        if (card_close < tags.size()) i = card_close;
    }
    return result;
}

std::vector<RawRecord> ingest_table_file(std::string_view data,
                                         TableFormat format,
                                         std::string_view source_name) {
    char delimiter = format == TableFormat::CommaSeparated ? ',' : '\t';
    auto rows = csv::parse(data, delimiter);
    if (rows.empty())
        throw Error(ErrorCode::MissingHeader, "table file has no header row");

    std::vector<std::string> header;
    header.reserve(rows[0].size());
    for (const auto& cell : rows[0]) header.push_back(text::canonicalize(cell));

    auto has_column = [&](std::string_view name) {
        return std::find(header.begin(), header.end(), name) != header.end();
    };
    for (std::string_view required : {"name", "headline", "summary"}) {
        if (!has_column(required))
            throw Error(ErrorCode::MissingHeader,
                        "header must name a \"" + std::string(required) + "\" column");
    }

    std::vector<RawRecord> records;
    records.reserve(rows.size() - 1);
    for (std::size_t r = 1; r < rows.size(); ++r) {
        const auto& row = rows[r];
        if (row.size() != header.size())
            throw Error(ErrorCode::RowArityMismatch,
                        "row has " + std::to_string(row.size()) + " fields, header has " +
                            std::to_string(header.size()),
                        static_cast<long long>(r + 1)); // 1-based including header

        RawRecord record;
        for (std::size_t c = 0; c < row.size(); ++c) {
            if (header[c].empty() || row[c].empty()) continue;
            if (header[c] == "source") {
                record.source_uri = row[c];
            } else if (header[c] == "extracted_at") {
                std::int64_t epoch = 0;
                if (text::parse_iso8601_utc(row[c], epoch)) record.extracted_at = epoch;
            } else {
                record.fields.emplace(header[c], row[c]);
            }
        }
        if (record.source_uri.empty())
            record.source_uri =
                std::string(source_name) + "#row" + std::to_string(r + 1);
        records.push_back(std::move(record));
    }
    return records;
}

EmploymentCategory infer_employment_category(std::string_view text_value) {
    // Order matters: "full time contractor" would be ambiguous; first match in
    // this fixed order wins.
    if (text::contains_phrase(text_value, "contractor")) return EmploymentCategory::Contractor;
    if (text::contains_phrase(text_value, "consultant") ||
        text::contains_phrase(text_value, "consulting"))
        return EmploymentCategory::Consultant;
    if (text::contains_phrase(text_value, "full time")) return EmploymentCategory::FullTime;
    if (text::contains_phrase(text_value, "temporary")) return EmploymentCategory::Temporary;
    return EmploymentCategory::Unknown;
}

namespace {

std::optional<MonthDate> parse_date_field(const std::map<std::string, std::string>& fields,
                                          const std::string& key,
                                          NormalizeStats* stats) {
    auto it = fields.find(key);
    if (it == fields.end() || text::canonicalize(it->second).empty()) return std::nullopt;
    auto parsed = MonthDate::parse(it->second);
    if (!parsed && stats) ++stats->date_parse_failures;
    return parsed;
}

} // namespace

Profile normalize(const RawRecord& record,
                  std::string_view salt,
                  std::size_t sequence,
                  NormalizeStats* stats) {
    auto field = [&](const std::string& key) -> std::string {
        auto it = record.fields.find(key);
        return it == record.fields.end() ? std::string() : text::canonicalize(it->second);
    };

    std::string name = field("name");
    if (name.empty())
        throw Error(ErrorCode::MissingField, "name");

    Profile profile;
    profile.headline = field("headline");
    profile.summary = field("summary");
    profile.region = field("region");

    for (std::size_t n = 0;; ++n) {
        std::string prefix = "experience." + std::to_string(n) + ".";
        bool any = false;
        for (const auto& [key, value] : record.fields) {
            if (key.rfind(prefix, 0) == 0 && !text::canonicalize(value).empty()) {
                any = true;
                break;
            }
        }
        if (!any) break;
        Experience exp;
        exp.title = field(prefix + "title");
        exp.company = field(prefix + "company");
        exp.location = field(prefix + "location");
        exp.date_from = parse_date_field(record.fields, prefix + "date_from", stats);
        exp.date_to = parse_date_field(record.fields, prefix + "date_to", stats);
        exp.description = field(prefix + "description");
        profile.experiences.push_back(std::move(exp));
    }

    if (profile.summary.empty() && profile.experiences.empty())
        throw Error(ErrorCode::MissingField, "summary");

    // Keyword inference over record fields, most specific first: an explicit
    // category column, then the headline, then experience titles.
    profile.employment_category = infer_employment_category(field("category"));
    if (profile.employment_category == EmploymentCategory::Unknown)
        profile.employment_category = infer_employment_category(profile.headline);
    for (const auto& exp : profile.experiences) {
        if (profile.employment_category != EmploymentCategory::Unknown) break;
        profile.employment_category = infer_employment_category(exp.title);
    }

    profile.subject_hash =
        digest::hmac_sha256_hex(salt, name + "\x1f" + record.source_uri);

    char seq[8];
    std::snprintf(seq, sizeof seq, "%06zu", sequence);
    profile.id = profile.subject_hash.substr(0, 12) + "-" + seq;
    return profile;
}

std::vector<Profile> normalize_all(const std::vector<RawRecord>& records,
                                   std::string_view salt,
                                   NormalizeStats* stats) {
    std::vector<Profile> profiles;
    profiles.reserve(records.size());
    for (std::size_t i = 0; i < records.size(); ++i)
        profiles.push_back(normalize(records[i], salt, i + 1, stats));
    return profiles;
}

} // namespace leakscope::ingest
