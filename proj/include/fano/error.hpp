#pragma once

#include <stdexcept>
#include <string>

namespace fano {

enum class ErrorCode {
    DegenerateInput,
    ZeroDeterminant,
    NotPrimitive,
    InternalInconsistency,
    InvalidScroll,
    InfiniteGamma,
    UnsupportedK,
    NotZeroDimensional,
    UnknownVariable,
    UnhandledCase,
    DegreeBoundTooSmall,
    WitnessNotFound,
    ParseError,
    IoError,
};

inline const char* error_code_name(ErrorCode c) {
    switch (c) {
        case ErrorCode::DegenerateInput: return "DegenerateInput";
        case ErrorCode::ZeroDeterminant: return "ZeroDeterminant";
        case ErrorCode::NotPrimitive: return "NotPrimitive";
        case ErrorCode::InternalInconsistency: return "InternalInconsistency";
        case ErrorCode::InvalidScroll: return "InvalidScroll";
        case ErrorCode::InfiniteGamma: return "InfiniteGamma";
        case ErrorCode::UnsupportedK: return "UnsupportedK";
        case ErrorCode::NotZeroDimensional: return "NotZeroDimensional";
        case ErrorCode::UnknownVariable: return "UnknownVariable";
        case ErrorCode::UnhandledCase: return "UnhandledCase";
        case ErrorCode::DegreeBoundTooSmall: return "DegreeBoundTooSmall";
        case ErrorCode::WitnessNotFound: return "WitnessNotFound";
        case ErrorCode::ParseError: return "ParseError";
        case ErrorCode::IoError: return "IoError";
    }
    return "Unknown";
}

class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& what)
        : std::runtime_error(std::string(error_code_name(code)) + ": " + what),
          code_(code) {}

    ErrorCode code() const { return code_; }

private:
    ErrorCode code_;
};

class DegreeBoundTooSmall : public Error {
public:
    DegreeBoundTooSmall(int minimum_usable, const std::string& what)
        : Error(ErrorCode::DegreeBoundTooSmall, what), minimum_usable_(minimum_usable) {}

    int minimum_usable() const { return minimum_usable_; }

private:
    int minimum_usable_;
};

}  // namespace fano
