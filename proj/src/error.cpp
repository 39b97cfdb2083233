#include "arsupp/error.hpp"

namespace arsupp {

std::string_view code_name(ErrorCode code) noexcept {
    switch (code) {
        case ErrorCode::InvalidArgument: return "InvalidArgument";
        case ErrorCode::CompositeCharacteristic: return "CompositeCharacteristic";
        case ErrorCode::ReducibleModulus: return "ReducibleModulus";
        case ErrorCode::FieldMismatch: return "FieldMismatch";
        case ErrorCode::NonSquare: return "NonSquare";
        case ErrorCode::DegenerateSuperdiagonal: return "DegenerateSuperdiagonal";
        case ErrorCode::BandTooWide: return "BandTooWide";
        case ErrorCode::PrimeTooSmall: return "PrimeTooSmall";
        case ErrorCode::SyntaxError: return "SyntaxError";
        case ErrorCode::DivisionByZero: return "DivisionByZero";
        case ErrorCode::DomainMismatch: return "DomainMismatch";
        case ErrorCode::NotUnimodular: return "NotUnimodular";
        case ErrorCode::EmptySupport: return "EmptySupport";
        case ErrorCode::ExtensionFieldUnsupported: return "ExtensionFieldUnsupported";
        case ErrorCode::BadPrime: return "BadPrime";
        case ErrorCode::ZeroOperator: return "ZeroOperator";
        case ErrorCode::GridExhausted: return "GridExhausted";
        case ErrorCode::ZeroPolynomial: return "ZeroPolynomial";
        case ErrorCode::IsPPower: return "IsPPower";
        case ErrorCode::ZeroEvaluationPoint: return "ZeroEvaluationPoint";
        case ErrorCode::InsufficientNodes: return "InsufficientNodes";
        case ErrorCode::ConsistencyFailure: return "ConsistencyFailure";
        case ErrorCode::IoError: return "IoError";
    }
    return "Unknown";
}

}  // namespace arsupp
