#include "natred/errors.hpp"

namespace natred {

const char* kind_name(ErrorKind k) {
    switch (k) {
        case ErrorKind::ShapeMismatch: return "ShapeMismatch";
        case ErrorKind::DegenerateForm: return "DegenerateForm";
        case ErrorKind::Inconsistent: return "Inconsistent";
        case ErrorKind::NotAnIdeal: return "NotAnIdeal";
        case ErrorKind::NotALieAlgebra: return "NotALieAlgebra";
        case ErrorKind::AxiomsFailed: return "AxiomsFailed";
        case ErrorKind::NotNaturallyReductive: return "NotNaturallyReductive";
        case ErrorKind::NotEffective: return "NotEffective";
        case ErrorKind::NotTransvection: return "NotTransvection";
        case ErrorKind::AbelianSumViolation: return "AbelianSumViolation";
        case ErrorKind::NotAbelianIdeal: return "NotAbelianIdeal";
        case ErrorKind::DecompositionViolation: return "DecompositionViolation";
        case ErrorKind::Reducible: return "Reducible";
        case ErrorKind::SpecInvalid: return "SpecInvalid";
        case ErrorKind::SkewViolation: return "SkewViolation";
        case ErrorKind::NotNormalForm: return "NotNormalForm";
        case ErrorKind::ConditionsFailed: return "ConditionsFailed";
        case ErrorKind::BlockLimit: return "BlockLimit";
        case ErrorKind::NotSimple: return "NotSimple";
        case ErrorKind::NotCompact: return "NotCompact";
        case ErrorKind::NotProper: return "NotProper";
        case ErrorKind::NotSemisimple: return "NotSemisimple";
        case ErrorKind::NotSymmetricFactor: return "NotSymmetricFactor";
        case ErrorKind::UnknownName: return "UnknownName";
        case ErrorKind::SchemaError: return "SchemaError";
        case ErrorKind::ZeroDivisor: return "ZeroDivisor";
        case ErrorKind::DimensionLimit: return "DimensionLimit";
        case ErrorKind::Internal: return "Internal";
    }
    return "Unknown";
}

}  // namespace natred
