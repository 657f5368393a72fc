#pragma once

#include <stdexcept>
#include <string>

namespace seshadri {

/// Base class of every error raised by the toolkit.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Bad parameters or a violated precondition.
class InvalidArgument : public Error {
 public:
  using Error::Error;
};

/// Powering a radical comparison would exceed the configured bit budget.
class BudgetExceeded : public Error {
 public:
  using Error::Error;
};

/// Every multiplicity of a fat point scheme is zero.
class DegenerateScheme : public Error {
 public:
  using Error::Error;
};

/// Malformed textual input.
class ParseError : public InvalidArgument {
 public:
  using InvalidArgument::InvalidArgument;
};

}  // namespace seshadri
