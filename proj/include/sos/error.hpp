#pragma once

#include <stdexcept>
#include <string>

namespace sos {

enum class Errc {
  invalid_argument = 1,
  parse = 2,
  io = 3,
  numerical = 4,
  cap_exceeded = 5,
  contract = 6,
};

/// Base exception for everything thrown by the library. The code is what the
/// C API turns into a `sos_status`.
class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& what) : std::runtime_error(what), code_(code) {}
  Errc code() const noexcept { return code_; }

 private:
  Errc code_;
};

class InvalidArgument : public Error {
 public:
  explicit InvalidArgument(const std::string& what) : Error(Errc::invalid_argument, what) {}
};

class ParseError : public Error {
 public:
  explicit ParseError(const std::string& what) : Error(Errc::parse, what) {}
};

class NumericalError : public Error {
 public:
  explicit NumericalError(const std::string& what) : Error(Errc::numerical, what) {}
};

/// Raised when a time-indexed model would need more slots than allowed.
class CapExceeded : public Error {
 public:
  CapExceeded(const std::string& what, long long required)
      : Error(Errc::cap_exceeded, what), required_(required) {}
  long long required() const noexcept { return required_; }

 private:
  long long required_;
};

/// Caller broke a precondition (out-of-order insertion, stale state, ...).
class ContractViolation : public Error {
 public:
  explicit ContractViolation(const std::string& what) : Error(Errc::contract, what) {}
};

}  // namespace sos
