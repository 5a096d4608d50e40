#include "leakscope/profile.hpp"

#include "leakscope/textutil.hpp"

#include <array>
#include <cctype>
#include <charconv>

namespace leakscope {

std::string_view employment_category_name(EmploymentCategory category) {
    switch (category) {
    case EmploymentCategory::Contractor: return "contractor";
    case EmploymentCategory::Consultant: return "consultant";
    case EmploymentCategory::FullTime: return "full_time";
    case EmploymentCategory::Temporary: return "temporary";
    case EmploymentCategory::Unknown: return "unknown";
    }
    return "unknown";
}

EmploymentCategory employment_category_from_name(std::string_view name) {
    if (name == "contractor") return EmploymentCategory::Contractor;
    if (name == "consultant") return EmploymentCategory::Consultant;
    if (name == "full_time") return EmploymentCategory::FullTime;
    if (name == "temporary") return EmploymentCategory::Temporary;
    return EmploymentCategory::Unknown;
}

std::string MonthDate::to_string() const {
    char buf[8];
    std::snprintf(buf, sizeof buf, "%04d-%02d", year, month);
    return buf;
}

namespace {

constexpr std::array<std::string_view, 12> kMonthNames = {
    "jan", "feb", "mar", "apr", "may", "jun",
    "jul", "aug", "sep", "oct", "nov", "dec",
};

bool parse_int(std::string_view s, int& out) {
    if (s.empty()) return false;
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), out);
    return ec == std::errc{} && ptr == s.data() + s.size();
}

bool all_digits(std::string_view s) {
    if (s.empty()) return false;
    for (char ch : s)
        if (!std::isdigit(static_cast<unsigned char>(ch))) return false;
    return true;
}

} // namespace

std::optional<MonthDate> MonthDate::parse(std::string_view s) {
    std::string canon = text::canonicalize(s);
    if (canon.empty()) return std::nullopt;

    // YYYY-MM
    if (canon.size() == 7 && canon[4] == '-' && all_digits(canon.substr(0, 4)) &&
        all_digits(canon.substr(5))) {
        int y = 0, m = 0;
        parse_int(canon.substr(0, 4), y);
        parse_int(canon.substr(5), m);
        if (m >= 1 && m <= 12) return MonthDate{y, m};
        return std::nullopt;
    }

    // "Mon YYYY" (month name may be longer than three letters, e.g. "January")
    if (auto space = canon.find(' '); space != std::string::npos) {
        std::string mon = text::to_lower_ascii(canon.substr(0, space));
        std::string_view year_part = std::string_view(canon).substr(space + 1);
        if (mon.size() >= 3 && all_digits(year_part) && year_part.size() == 4) {
            for (std::size_t i = 0; i < kMonthNames.size(); ++i) {
                if (std::string_view(mon).substr(0, 3) == kMonthNames[i]) {
                    int y = 0;
                    parse_int(year_part, y);
                    return MonthDate{y, static_cast<int>(i + 1)};
                }
            }
        }
        return std::nullopt;
    }

    // YYYY (month defaults to January)
    if (canon.size() == 4 && all_digits(canon)) {
        int y = 0;
        parse_int(canon, y);
        return MonthDate{y, 1};
    }
    return std::nullopt;
}

std::vector<std::string> profile_texts(const Profile& profile) {
    std::vector<std::string> texts;
    texts.push_back(profile.headline);
    texts.push_back(profile.summary);
    for (const auto& exp : profile.experiences) texts.push_back(exp.description);
    return texts;
}

std::size_t profile_completeness(const Profile& profile) {
    std::size_t count = 0;
    if (!profile.headline.empty()) ++count;
    if (!profile.summary.empty()) ++count;
    if (!profile.region.empty()) ++count;
    if (profile.employment_category != EmploymentCategory::Unknown) ++count;
    for (const auto& exp : profile.experiences) {
        if (!exp.title.empty()) ++count;
        if (!exp.company.empty()) ++count;
        if (!exp.location.empty()) ++count;
        if (exp.date_from) ++count;
        if (exp.date_to) ++count;
        if (!exp.description.empty()) ++count;
    }
    return count;
}

} // namespace leakscope
