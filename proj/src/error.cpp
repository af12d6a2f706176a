#include "hom/error.hpp"

namespace hom {

std::string_view to_string(ErrorKind kind) {
    switch (kind) {
        case ErrorKind::NonPositiveRate: return "NonPositiveRate";
        case ErrorKind::NonFiniteInput: return "NonFiniteInput";
        case ErrorKind::NoConvergence: return "NoConvergence";
        case ErrorKind::DegenerateDenominator: return "DegenerateDenominator";
        case ErrorKind::SingularDetuning: return "SingularDetuning";
        case ErrorKind::DetuningNotZero: return "DetuningNotZero";
        case ErrorKind::EigenFailure: return "EigenFailure";
        case ErrorKind::UnstableSystem: return "UnstableSystem";
        case ErrorKind::SingularSystem: return "SingularSystem";
        case ErrorKind::StepTooLarge: return "StepTooLarge";
        case ErrorKind::AsymmetricInput: return "AsymmetricInput";
        case ErrorKind::ParseError: return "ParseError";
        case ErrorKind::UnknownKey: return "UnknownKey";
        case ErrorKind::MissingField: return "MissingField";
        case ErrorKind::BadRange: return "BadRange";
    }
    return "Unknown";
}

}  // namespace hom
