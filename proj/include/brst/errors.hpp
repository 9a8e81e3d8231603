#pragma once

#include <stdexcept>
#include <string>

namespace brst {

/// Base class for every error raised by the library. The exit code is what
/// the command-line front end returns when the error escapes a subcommand.
class Error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
  virtual int exit_code() const noexcept { return 1; }
  virtual const char* kind() const noexcept { return "internal"; }
};

/// Malformed input text: spec files, element syntax, flags.
class ParseError : public Error {
public:
  using Error::Error;
  int exit_code() const noexcept override { return 2; }
  const char* kind() const noexcept override { return "parse"; }
};

/// Well-formed input that violates a mathematical precondition
/// (Jacobi, split closure, non-abelian ideal for sigma, non-cocycle, ...).
class ValidationError : public Error {
public:
  using Error::Error;
  int exit_code() const noexcept override { return 3; }
  const char* kind() const noexcept override { return "validation"; }
};

/// Slice bounds missing or a slice larger than the configured cap.
class ResourceError : public Error {
public:
  using Error::Error;
  int exit_code() const noexcept override { return 4; }
  const char* kind() const noexcept override { return "resource"; }
};

/// Elements or derivations from different generator tables were combined.
class ContextError : public Error {
public:
  using Error::Error;
  const char* kind() const noexcept override { return "context"; }
};

}  // namespace brst
