#pragma once

#include <stdexcept>
#include <string>

namespace pcm {

class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Invalid distribution/model parameter (sigma <= 0, a >= b, ...).
class ParamDomainError : public Error {
public:
    using Error::Error;
};

// Vector/matrix dimension mismatch.
class ShapeError : public Error {
public:
    using Error::Error;
};

// Argument outside a supported range (e.g. Hermite root degree cap).
class RangeError : public Error {
public:
    using Error::Error;
};

// Collocation plan cannot supply enough distinct points.
class PlanningError : public Error {
public:
    using Error::Error;
};

// Z-matrix rank deficient even after least-squares augmentation.
class SingularSystemError : public Error {
public:
    using Error::Error;
};

// Missing input binding on a gate model.
class BindingError : public Error {
public:
    using Error::Error;
};

// External model process failed; carries the captured output.
class ExternalModelError : public Error {
public:
    ExternalModelError(const std::string& msg, std::string captured)
        : Error(msg), captured_output(std::move(captured)) {}
    std::string captured_output;
};

// Problem-spec document malformed or schema-invalid.
class SpecError : public Error {
public:
    using Error::Error;
};

}  // namespace pcm
