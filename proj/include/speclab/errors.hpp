// speclab: numerical laboratory for the finite cosine kernel and its Dirac system.
// MIT license; see LICENSE at the repository root.
#pragma once

#include <stdexcept>
#include <string>

namespace speclab {

// All library failures derive from Error so callers can map them to exit codes.
class Error : public std::runtime_error {
public:
    explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

// A parameter violated a documented precondition (bad range, bad enum, ...).
class InvalidArgument : public Error {
public:
    explicit InvalidArgument(const std::string& msg) : Error("invalid argument: " + msg) {}
};

// Evaluation requested at or numerically too close to a pole.
class PoleError : public Error {
public:
    explicit PoleError(const std::string& msg) : Error("pole: " + msg) {}
};

// A value fell outside the range a table or grid can serve.
class RangeError : public Error {
public:
    explicit RangeError(const std::string& msg) : Error("out of range: " + msg) {}
};

// An iterative or adaptive scheme failed to reach its tolerance.
class ConvergenceError : public Error {
public:
    explicit ConvergenceError(const std::string& msg) : Error("no convergence: " + msg) {}
};

// Two independent routes to the same quantity disagreed beyond tolerance.
class CrossCheckError : public Error {
public:
    explicit CrossCheckError(const std::string& msg) : Error("cross-check mismatch: " + msg) {}
};

// Cache or report file could not be read, parsed, or written.
class IoError : public Error {
public:
    explicit IoError(const std::string& msg) : Error("io: " + msg) {}
};

} // namespace speclab
