#pragma once

#include <stdexcept>
#include <string>

namespace tracelab {

// Base of every error raised by the library. The CLI maps the subclasses to
// exit statuses (see tools/cli_main.cpp).
class Error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

class OverflowError : public Error {
public:
  using Error::Error;
};

// Precondition on an argument violated (wrong residue, p | m, t < 3, ...).
class DomainError : public Error {
public:
  using Error::Error;
};

class InvalidOrderError : public Error {
public:
  using Error::Error;
};

// t^2 - 4n is a perfect square: the element generates a split algebra and
// has to go through the exceptional-class machinery instead.
class ExceptionalTraceError : public Error {
public:
  using Error::Error;
};

// A search or enumeration hit its configured cap.
class ResourceError : public Error {
public:
  using Error::Error;
};

// Quadrature or series failed to reach the requested tolerance.
class NumericError : public Error {
public:
  using Error::Error;
};

class BudgetTooSmallError : public NumericError {
public:
  using NumericError::NumericError;
};

class DataInconsistencyError : public Error {
public:
  using Error::Error;
};

} // namespace tracelab
