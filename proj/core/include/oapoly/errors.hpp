#pragma once

#include <stdexcept>
#include <string>

namespace oapoly {

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Malformed or out-of-range input (bad digits, dimension mismatch, bad format).
struct InputError : Error {
    using Error::Error;
};

// An n=2-only operation was invoked with a different alphabet.
struct UnsupportedAlphabetError : Error {
    using Error::Error;
};

// A configured cap (orbit size, group order, memory, search budget guard) was exceeded.
struct ResourceError : Error {
    using Error::Error;
};

// A stated precondition does not hold (e.g. congruence report on a non strength-s vector).
struct PreconditionError : Error {
    using Error::Error;
};

// Inputs violate a structural premise (e.g. Method 1 on a non multiplicity-free family).
struct InconsistencyError : Error {
    using Error::Error;
};

}  // namespace oapoly
