#include "leakscope/dork.hpp"

#include "leakscope/error.hpp"
#include "leakscope/textutil.hpp"

#include <algorithm>
#include <set>

namespace leakscope::dork {

std::string_view operator_token(OperatorKind kind) {
    switch (kind) {
    case OperatorKind::Intitle: return "intitle:";
    case OperatorKind::Inurl: return "inurl:";
    case OperatorKind::Filetype: return "filetype:";
    case OperatorKind::Intext: return "intext:";
    case OperatorKind::Site: return "site:";
    case OperatorKind::Or: return "OR";
    case OperatorKind::And: return "AND";
    case OperatorKind::ExactPhrase: return "\"";
    }
    return "";
}

void DorkOperator::validate() const {
    bool takes_argument = kind != OperatorKind::Or && kind != OperatorKind::And;
    if (!takes_argument) {
        if (!argument.empty())
            throw Error(ErrorCode::InvalidArgument,
                        std::string(operator_token(kind)) + " takes no argument");
        return;
    }
    if (kind != OperatorKind::ExactPhrase && argument.empty())
        throw Error(ErrorCode::InvalidArgument,
                    std::string(operator_token(kind)) + " requires a non-empty argument");
    if (argument.find('"') != std::string::npos)
        throw Error(ErrorCode::InvalidArgument, "operator argument contains a double quote");
}

bool is_valid_site(std::string_view site) {
    if (site.empty()) return false;
    std::size_t label_start = 0;
    std::size_t labels = 0;
    for (std::size_t i = 0; i <= site.size(); ++i) {
        if (i == site.size() || site[i] == '.') {
            std::string_view label = site.substr(label_start, i - label_start);
            if (label.empty()) return false;
            if (label.front() == '-' || label.back() == '-') return false;
            ++labels;
            label_start = i + 1;
        } else {
            char ch = site[i];
            bool ok = (ch >= 'a' && ch <= 'z') || (ch >= '0' && ch <= '9') || ch == '-';
            if (!ok) return false;
        }
    }
    return labels >= 2;
}

namespace {

void check_phrase(std::string_view phrase, std::string_view what) {
    if (phrase.find('"') != std::string_view::npos)
        throw Error(ErrorCode::InvalidArgument, std::string(what) + " contains a double quote");
}

} // namespace

void validate_spec(const QuerySpec& spec) {
    if (!is_valid_site(spec.site))
        throw Error(ErrorCode::InvalidSite, "not a valid domain: \"" + spec.site + "\"");
    if (spec.company.empty())
        throw Error(ErrorCode::EmptyCompany, "company must be non-empty");
    check_phrase(spec.region, "region");
    check_phrase(spec.country, "country");
    check_phrase(spec.company, "company");
    if (spec.region.find(", ") != std::string::npos)
        throw Error(ErrorCode::InvalidArgument,
                    "region must not contain \", \" (reserved as the region/country separator)");

    std::set<std::string> seen;
    for (const auto& type : spec.employment_types) {
        if (type.empty())
            throw Error(ErrorCode::InvalidArgument, "employment type must be non-empty");
        check_phrase(type, "employment type");
        if (!seen.insert(text::to_lower_ascii(type)).second)
            throw Error(ErrorCode::InvalidArgument, "duplicate employment type: \"" + type + "\"");
    }
    if (spec.employment_types.empty() && !spec.extra_groups.empty())
        throw Error(ErrorCode::InvalidArgument,
                    "extra keyword groups require a non-empty employment list "
                    "(groups are positional in the query)");
    for (const auto& group : spec.extra_groups) {
        if (group.empty())
            throw Error(ErrorCode::InvalidArgument, "keyword group must be non-empty");
        for (const auto& keyword : group) {
            if (keyword.empty())
                throw Error(ErrorCode::InvalidArgument, "keyword must be non-empty");
            check_phrase(keyword, "keyword");
        }
    }
}

namespace {

std::string quoted_or_group(const std::vector<std::string>& phrases) {
    std::string out = "(";
    for (std::size_t i = 0; i < phrases.size(); ++i) {
        if (i > 0) out += " OR ";
        out += '"';
        out += phrases[i];
        out += '"';
    }
    out += ')';
    return out;
}

} // namespace

std::string build_dork_query(const QuerySpec& spec, QueryStyle style) {
    validate_spec(spec);
    const char* joiner = style == QueryStyle::Verbatim ? " & " : " AND ";

    std::string out = "site:";
    out += spec.site;
    out += " inurl:in (\"";
    out += spec.region;
    out += ", ";
    out += spec.country;
    out += "\" AND \"";
    out += spec.company;
    out += "\")";

    if (!spec.employment_types.empty()) {
        out += joiner;
        out += quoted_or_group(spec.employment_types);
    }
    for (const auto& group : spec.extra_groups) {
        out += joiner;
        out += quoted_or_group(group);
    }
    return out;
}

namespace {

// Minimal cursor over the fixed query template. Every expectation failure
// reports the byte offset it was checked at.
struct Cursor {
    std::string_view input;
    std::size_t pos = 0;

    [[noreturn]] void fail(const std::string& expected) const {
        throw Error(ErrorCode::ParseError, "expected " + expected,
                    static_cast<long long>(pos));
    }

    bool try_literal(std::string_view literal) {
        if (input.substr(pos, literal.size()) != literal) return false;
        pos += literal.size();
        return true;
    }

    void expect_literal(std::string_view literal) {
        if (!try_literal(literal)) fail("`" + std::string(literal) + "`");
    }

    std::string quoted_phrase() {
        expect_literal("\"");
        std::size_t close = input.find('"', pos);
        if (close == std::string_view::npos) fail("closing `\"`");
        std::string phrase(input.substr(pos, close - pos));
        pos = close + 1;
        return phrase;
    }

    bool at_end() const { return pos >= input.size(); }
};

std::vector<std::string> parse_or_group(Cursor& cur) {
    cur.expect_literal("(");
    std::vector<std::string> phrases;
    phrases.push_back(cur.quoted_phrase());
    while (cur.try_literal(" OR ")) phrases.push_back(cur.quoted_phrase());
    cur.expect_literal(")");
    return phrases;
}

} // namespace

QuerySpec parse_dork_query(std::string_view query) {
    Cursor cur{query};
    QuerySpec spec;

    cur.expect_literal("site:");
    std::size_t site_start = cur.pos;
    std::size_t site_end = query.find(' ', cur.pos);
    if (site_end == std::string_view::npos) cur.fail("` ` after the site argument");
    spec.site = std::string(query.substr(site_start, site_end - site_start));
    if (!is_valid_site(spec.site))
        throw Error(ErrorCode::InvalidSite, "not a valid domain: \"" + spec.site + "\"",
                    static_cast<long long>(site_start));
    cur.pos = site_end;

    cur.expect_literal(" inurl:in (");
    std::size_t phrase_pos = cur.pos;
    std::string place = cur.quoted_phrase();
    std::size_t comma = place.find(", ");
    if (comma == std::string::npos) {
        cur.pos = phrase_pos;
        cur.fail("`\"Region, Country\"` phrase");
    }
    spec.region = place.substr(0, comma);
    spec.country = place.substr(comma + 2);
    cur.expect_literal(" AND ");
    spec.company = cur.quoted_phrase();
    cur.expect_literal(")");

    bool first_group = true;
    while (!cur.at_end()) {
        if (!cur.try_literal(" & ") && !cur.try_literal(" AND "))
            cur.fail("` & `, ` AND `, or end of query");
        auto group = parse_or_group(cur);
        if (first_group) {
            spec.employment_types = std::move(group);
            first_group = false;
        } else {
            spec.extra_groups.push_back(std::move(group));
        }
    }

    validate_spec(spec);
    return spec;
}

} // namespace leakscope::dork
