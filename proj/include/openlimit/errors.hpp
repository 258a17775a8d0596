#pragma once

#include <stdexcept>
#include <string>

namespace openlimit {

// Argument outside the mathematical domain of an operation (e.g. evaluating at z = 0).
class DomainError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

// Winding number requested for a point lying on the curve itself.
class OnCurveError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Solver failure or a numerical precondition that the data does not meet.
class NumericalError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Operation is not defined for this input (e.g. non-polar curve passed to the symmetriser).
class UnsupportedError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class ConfigError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

}  // namespace openlimit
