#pragma once

#include <stdexcept>
#include <string>

namespace photonmol {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Invalid physical parameters or a violated precondition of a formula.
class ParameterError : public Error {
public:
    using Error::Error;
};

/// Operator or state dimensions that do not match their Hilbert space.
class DimensionError : public Error {
public:
    using Error::Error;
};

/// A numerical solve failed: singular system, unstable integration, no root.
class SolverError : public Error {
public:
    using Error::Error;
};

/// Malformed configuration, unknown names, bad command-line input.
class ConfigError : public Error {
public:
    using Error::Error;
};

}  // namespace photonmol
