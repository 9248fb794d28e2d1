#pragma once

#include <stdexcept>
#include <string>

namespace normform {

// Base class for all library errors.
struct error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Bad argument, flag, discriminant, residue or configuration. CLI exit 2.
struct invalid_input_error : error {
    using error::error;
};

// An operation exceeded a configured size cap (enumeration, convolution,
// sieve limit). CLI exit 3.
struct resource_limit_error : error {
    using error::error;
};

// Exact integer arithmetic would wrap the host word.
struct overflow_error : error {
    using error::error;
};

// A stated precondition does not hold for the given inputs.
struct precondition_error : error {
    using error::error;
};

// The inputs are outside the domain where the quantity is defined.
struct not_applicable_error : error {
    using error::error;
};

// Argument outside the range covered by a precomputed structure.
struct out_of_range_error : error {
    using error::error;
};

// A numerical routine could not reach its accuracy budget.
struct numeric_error : error {
    using error::error;
};

// Unweighted average over an empty index set.
struct empty_average_error : error {
    using error::error;
};

// Sieve cache file failed magic/length/checksum validation.
struct cache_integrity_error : error {
    using error::error;
};

} // namespace normform
