#pragma once

#include <stdexcept>
#include <string>

namespace natred {

enum class ErrorKind {
    ShapeMismatch,
    DegenerateForm,
    Inconsistent,
    NotAnIdeal,
    NotALieAlgebra,
    AxiomsFailed,
    NotNaturallyReductive,
    NotEffective,
    NotTransvection,
    AbelianSumViolation,
    NotAbelianIdeal,
    DecompositionViolation,
    Reducible,
    SpecInvalid,
    SkewViolation,
    NotNormalForm,
    ConditionsFailed,
    BlockLimit,
    NotSimple,
    NotCompact,
    NotProper,
    NotSemisimple,
    NotSymmetricFactor,
    UnknownName,
    SchemaError,
    ZeroDivisor,
    DimensionLimit,
    Internal,
};

const char* kind_name(ErrorKind k);

class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& what)
        : std::runtime_error(std::string(kind_name(kind)) + ": " + what), kind_(kind) {}
    ErrorKind kind() const { return kind_; }

private:
    ErrorKind kind_;
};

// Internal invariant checks that guard theorem-level claims. A failure here means
// the input fell outside the class the computation is valid for.
inline void require(bool cond, ErrorKind kind, const std::string& what) {
    if (!cond) throw Error(kind, what);
}

}  // namespace natred
