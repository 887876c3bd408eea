#pragma once

#include <stdexcept>
#include <string>

namespace alberich {

/// Base of every exception thrown by the library.
class Error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// A caller broke an operation's precondition (bad shape, out-of-range value).
class InvalidInput : public Error {
public:
  using Error::Error;
};

/// Malformed or inconsistent configuration / input file.
class ConfigError : public Error {
public:
  using Error::Error;
};

/// NaN, divergence, or a numerical procedure that failed to produce a usable result.
class NumericalError : public Error {
public:
  using Error::Error;
};

/// A unit cell that cannot be mapped onto a layered stack.
class InfeasibleGeometry : public Error {
public:
  using Error::Error;
};

} // namespace alberich
