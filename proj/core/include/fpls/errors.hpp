#pragma once

#include <stdexcept>
#include <string>

namespace fpls {

/// Base class for all errors thrown by this library.
class Error : public std::runtime_error {
public:
    explicit Error(const std::string& what) : std::runtime_error(what) {}
};

/// Invalid argument or violated call contract (bad degree, empty grid, q out of range, ...).
class ParameterError : public Error {
public:
    explicit ParameterError(const std::string& what) : Error(what) {}
};

/// Structurally invalid data (incomplete subjects, label mismatch, rank-deficient curve, ...).
class DataError : public Error {
public:
    explicit DataError(const std::string& what) : Error(what) {}
};

/// Numerical failure (factorization of a non-PD matrix, singular scatter, degenerate input).
class NumericalError : public Error {
public:
    explicit NumericalError(const std::string& what) : Error(what) {}
};

}  // namespace fpls
