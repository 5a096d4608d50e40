#pragma once

#include <string>
#include <string_view>
#include <vector>

namespace leakscope::dork {

enum class OperatorKind {
    Intitle,
    Inurl,
    Filetype,
    Intext,
    Site,
    Or,
    And,
    ExactPhrase,
};

std::string_view operator_token(OperatorKind kind);

struct DorkOperator {
    OperatorKind kind;
    std::string argument; // empty for Or/And

    // Throws on an argument outside the operator's contract (empty where one
    // is required, or containing an unescaped double quote).
    void validate() const;
};

// Structured reconnaissance search intent for the profile-search template.
struct QuerySpec {
    std::string site;
    std::string region;
    std::string country;
    std::string company;
    std::vector<std::string> employment_types;
    std::vector<std::vector<std::string>> extra_groups;

    bool operator==(const QuerySpec&) const = default;
};

enum class QueryStyle { Verbatim, Normalized };

bool is_valid_site(std::string_view site);

// Throws InvalidSite / EmptyCompany / InvalidArgument when the spec cannot
// render to an unambiguous query.
void validate_spec(const QuerySpec& spec);

std::string build_dork_query(const QuerySpec& spec, QueryStyle style);

// Inverse of build_dork_query for both styles. Throws ParseError carrying the
// byte offset of the failure and an expected-token message.
QuerySpec parse_dork_query(std::string_view query);

} // namespace leakscope::dork
