#include "leakscope/csv.hpp"

namespace leakscope::csv {

std::vector<std::vector<std::string>> parse(std::string_view data, char delimiter) {
    std::vector<std::vector<std::string>> rows;
    std::vector<std::string> row;
    std::string field;
    bool quoted = false;
    bool row_started = false;

    std::size_t i = 0;
    auto end_field = [&] {
        row.push_back(std::move(field));
        field.clear();
    };
    auto end_row = [&] {
        end_field();
        rows.push_back(std::move(row));
        row.clear();
        row_started = false;
    };

    while (i < data.size()) {
        char ch = data[i];
        if (quoted) {
            if (ch == '"') {
                if (i + 1 < data.size() && data[i + 1] == '"') {
                    field.push_back('"');
                    ++i;
                } else {
                    quoted = false;
                }
            } else {
                field.push_back(ch);
            }
            ++i;
            continue;
        }
        if (ch == '"' && field.empty()) {
            quoted = true;
            row_started = true;
            ++i;
            continue;
        }
        if (ch == delimiter) {
            end_field();
            row_started = true;
            ++i;
            continue;
        }
        if (ch == '\r') {
            ++i;
            continue;
        }
        if (ch == '\n') {
            if (row_started || !field.empty() || !row.empty()) end_row();
            ++i;
            continue;
        }
        field.push_back(ch);
        row_started = true;
        ++i;
    }
    if (row_started || !field.empty() || !row.empty()) end_row();
    return rows;
}

std::string escape_field(std::string_view field, char delimiter) {
    bool needs_quotes = false;
    for (char ch : field) {
        if (ch == delimiter || ch == '"' || ch == '\n' || ch == '\r') {
            needs_quotes = true;
            break;
        }
    }
    if (!needs_quotes) return std::string(field);
    std::string out = "\"";
    for (char ch : field) {
        if (ch == '"') out += "\"\"";
        else out.push_back(ch);
    }
    out.push_back('"');
    return out;
}

std::string write_row(const std::vector<std::string>& fields, char delimiter) {
    std::string out;
    for (std::size_t i = 0; i < fields.size(); ++i) {
        if (i > 0) out.push_back(delimiter);
        out += escape_field(fields[i], delimiter);
    }
    out.push_back('\n');
    return out;
}

} // namespace leakscope::csv
