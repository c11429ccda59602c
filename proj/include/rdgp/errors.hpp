#ifndef RDGP_ERRORS_HPP
#define RDGP_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace rdgp {

struct Error : std::runtime_error {
    explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

// Invalid model or algorithm parameters (non-positive length-scales, ...).
struct ParameterError : Error {
    using Error::Error;
};

// Input outside the admissible domain (non-finite argument, point outside box).
struct DomainError : Error {
    using Error::Error;
};

// A computation would exceed double range; message names the offending argument.
struct OverflowError : Error {
    using Error::Error;
};

// Linear-algebra failure (factorization did not succeed even with jitter, ...).
struct NumericalError : Error {
    using Error::Error;
};

// Malformed input data; message carries the line number where applicable.
struct DataError : Error {
    using Error::Error;
};

// Bad CLI flags or config file values.
struct ConfigError : Error {
    using Error::Error;
};

} // namespace rdgp

#endif
