#pragma once

#include <stdexcept>
#include <string>

namespace qig {

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

#define QIG_DEFINE_ERROR(Name)                   \
    struct Name : Error {                        \
        using Error::Error;                      \
    }

QIG_DEFINE_ERROR(DomainError);
QIG_DEFINE_ERROR(InfeasiblePoint);
QIG_DEFINE_ERROR(DimensionError);
QIG_DEFINE_ERROR(NonHermitianInput);
QIG_DEFINE_ERROR(DegenerateState);
QIG_DEFINE_ERROR(BoundaryPoint);
QIG_DEFINE_ERROR(QuadratureFailure);
QIG_DEFINE_ERROR(NonConvergence);
QIG_DEFINE_ERROR(SupportMismatch);
QIG_DEFINE_ERROR(NormalizationFailure);
QIG_DEFINE_ERROR(DivergenceError);
QIG_DEFINE_ERROR(DegenerateTotal);

#undef QIG_DEFINE_ERROR

}  // namespace qig
