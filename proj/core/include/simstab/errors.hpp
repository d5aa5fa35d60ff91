#pragma once

#include <stdexcept>
#include <string>

namespace simstab {

/// Base class for all errors raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Invalid argument or precondition violation (zero polynomial, pole hit, ...).
class DomainError : public Error {
public:
    using Error::Error;
};

/// Configuration / plant data failed validation. Maps to CLI exit code 1.
class InputError : public Error {
public:
    using Error::Error;
};

/// The stabilization problem is provably unsolvable. Maps to CLI exit code 2.
class InfeasibleError : public Error {
public:
    using Error::Error;
};

/// An iterative method failed to converge. Maps to CLI exit code 3.
class SolverError : public Error {
public:
    using Error::Error;
};

} // namespace simstab
