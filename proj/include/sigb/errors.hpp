#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace sigb {

// Base class of every error thrown by this library.
class Error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

// Dimension mismatch or index outside the matrix extents.
class ShapeError : public Error {
public:
  using Error::Error;
};

// Invalid entry data, e.g. non-finite values at construction.
class ValueError : public Error {
public:
  using Error::Error;
};

// The operation was asked of an all-zero matrix or a dead walk;
// sigma is exactly zero and no bound is needed.
class DegenerateInputError : public Error {
public:
  using Error::Error;
};

// Sigma(AA*) = 0: the all-ones vector is a null vector of the Gram
// matrix, every walk total vanishes, and the lower-bound results do
// not apply to this matrix.
class TheoremInapplicableError : public Error {
public:
  using Error::Error;
};

// A walk level outside the recorded range was requested.
class OutOfRangeError : public Error {
public:
  using Error::Error;
};

// Row/column partition does not cover the index ranges or overlaps.
class PartitionError : public Error {
public:
  using Error::Error;
};

// Invalid run configuration (CLI arguments, generator specs).
class ConfigError : public Error {
public:
  using Error::Error;
};

// Matrix Market syntax error; carries the 1-based source line when the
// failure is tied to one (line() is 0 for file-level failures).
class ParseError : public Error {
public:
  explicit ParseError(const std::string& what) : Error(what), line_(0) {}
  ParseError(const std::string& what, std::size_t line)
      : Error(what + " (line " + std::to_string(line) + ")"), line_(line) {}

  std::size_t line() const noexcept { return line_; }

private:
  std::size_t line_;
};

}  // namespace sigb
