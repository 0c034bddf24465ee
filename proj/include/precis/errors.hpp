#pragma once

#include <stdexcept>
#include <string>

namespace precis {

// Base for everything thrown by this library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Bad user input: shapes, ranges, malformed config values.
class ValidationError : public Error {
public:
    using Error::Error;
};

// File access or format problems.
class IoError : public Error {
public:
    using Error::Error;
};

// CSV that failed to parse; carries a 1-based line/column position.
class CsvParseError : public IoError {
public:
    CsvParseError(const std::string& msg, std::size_t line, std::size_t column)
        : IoError(msg + " (line " + std::to_string(line) + ", column " +
                  std::to_string(column) + ")"),
          line_(line), column_(column) {}

    std::size_t line() const { return line_; }
    std::size_t column() const { return column_; }

private:
    std::size_t line_;
    std::size_t column_;
};

// Numerical failure inside a solver or factorization.
class NumericalError : public Error {
public:
    using Error::Error;
};

class NotPositiveDefinite : public NumericalError {
public:
    using NumericalError::NumericalError;
};

// LP or column solver gave up; carries the offending column when known.
class SolverFailure : public NumericalError {
public:
    explicit SolverFailure(const std::string& msg) : NumericalError(msg), column_(-1) {}
    SolverFailure(const std::string& msg, long column)
        : NumericalError(msg + " (column " + std::to_string(column) + ")"),
          column_(column) {}

    long column() const { return column_; }

private:
    long column_;
};

// A data column with no variance where a regression was requested.
class DegenerateColumn : public NumericalError {
public:
    DegenerateColumn(const std::string& msg, long column)
        : NumericalError(msg + " (column " + std::to_string(column) + ")"),
          column_(column) {}

    long column() const { return column_; }

private:
    long column_;
};

}  // namespace precis
