#pragma once

#include <stdexcept>
#include <string>

namespace neuro01 {

/// Base of every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Malformed arguments: dimension mismatches, empty inputs.
class InvalidInput : public Error {
public:
    using Error::Error;
};

/// A configuration value outside its allowed domain.
class InvalidConfig : public Error {
public:
    using Error::Error;
};

/// A caller broke an operation precondition (e.g. exploiting an idle neuron).
class ContractViolation : public Error {
public:
    using Error::Error;
};

/// Requested case is outside what the implementation supports.
class Unsupported : public Error {
public:
    using Error::Error;
};

/// Problems with user-supplied data files.
class DataError : public Error {
public:
    using Error::Error;
};

class MissingColumn : public DataError {
public:
    using DataError::DataError;
};

class NonNumericCell : public DataError {
public:
    NonNumericCell(const std::string& what, std::size_t row, std::string column)
        : DataError(what), row_(row), column_(std::move(column)) {}
    std::size_t row() const { return row_; }
    const std::string& column() const { return column_; }

private:
    std::size_t row_;
    std::string column_;
};

class EmptyFile : public DataError {
public:
    using DataError::DataError;
};

/// Model file could not be parsed or failed invariant checks.
class CorruptModel : public DataError {
public:
    using DataError::DataError;
};

/// R^2 with a zero-variance truth vector.
class UndefinedMetric : public Error {
public:
    using Error::Error;
};

} // namespace neuro01
