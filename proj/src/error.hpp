#pragma once

#include <stdexcept>
#include <string>

namespace leakaudit {

enum class ErrorCode {
    InvalidArgument,
    Parse,
    Validation,
    Infeasible,
    Io,
    DimensionMismatch,
    Degenerate,
    Undefined,
};

class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& what) : std::runtime_error(what), code_(code) {}
    ErrorCode code() const noexcept { return code_; }

private:
    ErrorCode code_;
};

}  // namespace leakaudit
