#pragma once

#include <stdexcept>
#include <string>

namespace cubic {

enum class ErrorCode {
    PreconditionViolation,
    InvalidParams,
    InternalInconsistency,
    DomainError,
    PrecisionExhausted,
    DependentUnits,
    OutOfRegime,
    InvalidInput,
    ConfigError,
};

const char* to_string(ErrorCode code);

class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& what)
        : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}
    ErrorCode code() const { return code_; }

private:
    ErrorCode code_;
};

inline const char* to_string(ErrorCode code) {
    switch (code) {
        case ErrorCode::PreconditionViolation: return "precondition violation";
        case ErrorCode::InvalidParams: return "invalid params";
        case ErrorCode::InternalInconsistency: return "internal inconsistency";
        case ErrorCode::DomainError: return "domain error";
        case ErrorCode::PrecisionExhausted: return "precision exhausted";
        case ErrorCode::DependentUnits: return "dependent units";
        case ErrorCode::OutOfRegime: return "out of regime";
        case ErrorCode::InvalidInput: return "invalid input";
        case ErrorCode::ConfigError: return "config error";
    }
    return "error";
}

}  // namespace cubic
