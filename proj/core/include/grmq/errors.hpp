#pragma once

#include <stdexcept>
#include <string>

namespace grmq {

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// invalid chunk size / cutoff / group size combinations
struct ConfigError : Error {
    using Error::Error;
};

// NaN values in the input array
struct InputError : Error {
    using Error::Error;
};

// out-of-bounds or inverted query ranges
struct RangeError : Error {
    using Error::Error;
};

// querying an index on a value-only hierarchy, oracle size cap exceeded
struct StateError : Error {
    using Error::Error;
};

struct IoError : Error {
    using Error::Error;
};

}  // namespace grmq
