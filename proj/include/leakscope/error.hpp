#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace leakscope {

enum class ErrorCode {
    InvalidSite,
    EmptyCompany,
    InvalidArgument,
    ParseError,
    NotMarkup,
    MissingHeader,
    RowArityMismatch,
    MissingField,
    UnknownProfileId,
    DuplicateRuleId,
    MixedProfileIds,
    InsufficientText,
    OutOfRange,
    MissingPersona,
    BadThreshold,
    InfeasibleParams,
    SchemaError,
    CoverageError,
    ConfigError,
    IoError,
};

std::string_view error_code_name(ErrorCode code);

// Single exception type for all named contract errors. `position` carries the
// byte offset / row / line where one is defined for the code, else -1.
class Error : public std::runtime_error {
public:
    Error(ErrorCode code, std::string message, long long position = -1)
        : std::runtime_error(format(code, message, position)),
          code_(code),
          message_(std::move(message)),
          position_(position) {}

    ErrorCode code() const noexcept { return code_; }
    const std::string& message() const noexcept { return message_; }
    long long position() const noexcept { return position_; }

    // CLI contract: 0 success, 1 validation error, 2 I/O error.
    int exit_code() const noexcept { return code_ == ErrorCode::IoError ? 2 : 1; }

private:
    static std::string format(ErrorCode code, const std::string& message, long long position);

    ErrorCode code_;
    std::string message_;
    long long position_;
};

} // namespace leakscope
