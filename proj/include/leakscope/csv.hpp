#pragma once

#include <string>
#include <string_view>
#include <vector>

namespace leakscope::csv {

// RFC-4180-style reader for comma or tab separated text. Quoted fields may
// contain the delimiter, doubled quotes and newlines. Rows are returned
// verbatim; arity checks belong to the caller.
std::vector<std::vector<std::string>> parse(std::string_view data, char delimiter);

std::string escape_field(std::string_view field, char delimiter);

std::string write_row(const std::vector<std::string>& fields, char delimiter);

} // namespace leakscope::csv
