#pragma once

#include <stdexcept>
#include <string>

namespace nsfd {

// Base class for every error raised by the library. Audit-style operations
// never throw; they return reports instead.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

#define NSFD_DEFINE_ERROR(Name)                                              \
    class Name : public Error {                                              \
    public:                                                                  \
        explicit Name(const std::string& what) : Error(#Name ": " + what) {} \
    }

NSFD_DEFINE_ERROR(DerivativeMismatch);
NSFD_DEFINE_ERROR(NegativeAtZero);
NSFD_DEFINE_ERROR(EmptyZeros);
NSFD_DEFINE_ERROR(AmbiguousTail);
NSFD_DEFINE_ERROR(GNotInClass);
NSFD_DEFINE_ERROR(InvalidWeights);
NSFD_DEFINE_ERROR(NonPositiveStep);
NSFD_DEFINE_ERROR(NegativeState);
NSFD_DEFINE_ERROR(ParameterOutOfRange);
NSFD_DEFINE_ERROR(StepCountOverflow);
NSFD_DEFINE_ERROR(OracleSelfCheckFailed);
NSFD_DEFINE_ERROR(JacobianMissing);
NSFD_DEFINE_ERROR(GridMismatch);
NSFD_DEFINE_ERROR(UnknownName);

#undef NSFD_DEFINE_ERROR

}  // namespace nsfd
