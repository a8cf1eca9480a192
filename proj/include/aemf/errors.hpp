#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace aemf {

/// Base of every error the library raises. `kind()` is a stable
/// machine-readable tag used by the CLI error line.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
  virtual const char* kind() const noexcept { return "Error"; }
};

/// Structurally invalid graph or instance data.
class InvalidInstance : public Error {
 public:
  using Error::Error;
  const char* kind() const noexcept override { return "InvalidInstance"; }
};

class ParseError : public Error {
 public:
  ParseError(std::size_t line, const std::string& message)
      : Error("line " + std::to_string(line) + ": " + message), line_(line) {}
  std::size_t line() const noexcept { return line_; }
  const char* kind() const noexcept override { return "ParseError"; }

 private:
  std::size_t line_;
};

/// Lower bounds cannot be satisfied.
class Infeasible : public Error {
 public:
  using Error::Error;
  const char* kind() const noexcept override { return "Infeasible"; }
};

/// An enumeration oracle would exceed its candidate budget.
class BudgetExceeded : public Error {
 public:
  using Error::Error;
  const char* kind() const noexcept override { return "BudgetExceeded"; }
};

/// The requested solver does not handle this deviation function.
class UnsupportedDeviation : public Error {
 public:
  using Error::Error;
  const char* kind() const noexcept override { return "UnsupportedDeviation"; }
};

}  // namespace aemf
