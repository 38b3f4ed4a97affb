#pragma once

#include <stdexcept>
#include <string>

namespace reebsweep {

/// Malformed or unusable user input (bad numbers, duplicate points, ...).
class InputError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// A caller broke an operation's precondition.
class ContractViolation : public std::logic_error {
public:
    using std::logic_error::logic_error;
};

/// An internal data-structure invariant no longer holds.
class InvariantViolation : public std::logic_error {
public:
    using std::logic_error::logic_error;
};

/// Input whose dimension disagrees with the functional or with itself.
class DimensionMismatch : public InputError {
public:
    using InputError::InputError;
};

}  // namespace reebsweep
