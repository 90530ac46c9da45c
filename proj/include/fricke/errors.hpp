#pragma once

#include <stdexcept>
#include <string>

namespace fricke {

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct DomainError : Error {
    using Error::Error;
};

// Shell cutoff exceeded before the tail bound reached the tolerance.
struct NonConvergence : Error {
    using Error::Error;
};

struct RealnessViolation : Error {
    using Error::Error;
};

struct SingularTerm : Error {
    using Error::Error;
};

struct UnknownBound : Error {
    using Error::Error;
};

struct ConstraintViolation : Error {
    using Error::Error;
};

struct CertificateMismatch : Error {
    using Error::Error;
};

struct EvaluationTooClose : Error {
    using Error::Error;
};

struct FixtureError : Error {
    using Error::Error;
};

} // namespace fricke
