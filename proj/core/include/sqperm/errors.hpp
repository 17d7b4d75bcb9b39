#pragma once

#include <stdexcept>
#include <string>

namespace sqperm {

/// Base of every error the library reports.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A caller handed in something outside an operation's domain
/// (composite modulus, bad override, empty range).
class InvalidArgument : public Error {
 public:
  using Error::Error;
};

/// An element that should be a generator of F_{p^2}^x is not.
class NotAGenerator : public InvalidArgument {
 public:
  using InvalidArgument::InvalidArgument;
};

class DivisionByZero : public Error {
 public:
  using Error::Error;
};

/// An expensive oracle was asked to run above its configured size cap.
class SizeCapExceeded : public Error {
 public:
  using Error::Error;
};

/// An internal identity that must hold unconditionally did not
/// (e.g. the beta_0 witness is not +-1, or an exact division left a remainder).
class ContractViolation : public Error {
 public:
  using Error::Error;
};

}  // namespace sqperm
