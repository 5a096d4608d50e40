#include "leakscope/error.hpp"

namespace leakscope {

std::string_view error_code_name(ErrorCode code) {
    switch (code) {
        case ErrorCode::InvalidSite: return "InvalidSite";
        case ErrorCode::EmptyCompany: return "EmptyCompany";
        case ErrorCode::InvalidArgument: return "InvalidArgument";
        case ErrorCode::ParseError: return "ParseError";
        case ErrorCode::NotMarkup: return "NotMarkup";
        case ErrorCode::MissingHeader: return "MissingHeader";
        case ErrorCode::RowArityMismatch: return "RowArityMismatch";
        case ErrorCode::MissingField: return "MissingField";
        case ErrorCode::UnknownProfileId: return "UnknownProfileId";
        case ErrorCode::DuplicateRuleId: return "DuplicateRuleId";
        case ErrorCode::MixedProfileIds: return "MixedProfileIds";
        case ErrorCode::InsufficientText: return "InsufficientText";
        case ErrorCode::OutOfRange: return "OutOfRange";
        case ErrorCode::MissingPersona: return "MissingPersona";
        case ErrorCode::BadThreshold: return "BadThreshold";
        case ErrorCode::InfeasibleParams: return "InfeasibleParams";
        case ErrorCode::SchemaError: return "SchemaError";
        case ErrorCode::CoverageError: return "CoverageError";
        case ErrorCode::ConfigError: return "ConfigError";
        case ErrorCode::IoError: return "IoError";
    }
    return "Error";
}

std::string Error::format(ErrorCode code, const std::string& message, long long position) {
    std::string out{error_code_name(code)};
    if (position >= 0) {
        out += " at ";
        out += std::to_string(position);
    }
    out += ": ";
    out += message;
    return out;
}

} // namespace leakscope
