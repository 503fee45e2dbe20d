#pragma once

#include <stdexcept>
#include <string>

namespace ig {

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// violated documented precondition (space mismatch, overlapping sums, ...)
struct PreconditionError : Error {
    using Error::Error;
};

struct PoleError : Error {
    using Error::Error;
};

struct DivergenceError : Error {
    using Error::Error;
};

}  // namespace ig
