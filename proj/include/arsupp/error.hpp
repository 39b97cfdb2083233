#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace arsupp {

enum class ErrorCode {
    InvalidArgument,
    CompositeCharacteristic,
    ReducibleModulus,
    FieldMismatch,
    NonSquare,
    DegenerateSuperdiagonal,
    BandTooWide,
    PrimeTooSmall,
    SyntaxError,
    DivisionByZero,
    DomainMismatch,
    NotUnimodular,
    EmptySupport,
    ExtensionFieldUnsupported,
    BadPrime,
    ZeroOperator,
    GridExhausted,
    ZeroPolynomial,
    IsPPower,
    ZeroEvaluationPoint,
    InsufficientNodes,
    ConsistencyFailure,
    IoError,
};

std::string_view code_name(ErrorCode code) noexcept;

/// Every failure raised by the library carries a machine-readable code.
class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& message)
        : std::runtime_error(message), code_(code) {}

    ErrorCode code() const noexcept { return code_; }

private:
    ErrorCode code_;
};

/// Parse failures additionally record the byte offset into the input.
class SyntaxError : public Error {
public:
    SyntaxError(std::size_t position, const std::string& message)
        : Error(ErrorCode::SyntaxError,
                message + " at position " + std::to_string(position)),
          position_(position) {}

    std::size_t position() const noexcept { return position_; }

private:
    std::size_t position_;
};

[[noreturn]] inline void fail(ErrorCode code, const std::string& message) {
    throw Error(code, message);
}

}  // namespace arsupp
