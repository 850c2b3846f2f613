#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace opsyn {

/// Base of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Unknown names, malformed sequences, violated preconditions on inputs.
class InputError : public Error {
 public:
  using Error::Error;
};

class ParseError : public InputError {
 public:
  ParseError(std::size_t line, const std::string& what)
      : InputError("line " + std::to_string(line) + ": " + what), line_(line) {}
  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

/// Exhaustive enumeration would exceed the configured cap.
class CapExceeded : public Error {
 public:
  explicit CapExceeded(std::size_t count)
      : Error("enumeration cap exceeded (" + std::to_string(count) + " candidates)"),
        count_(count) {}
  std::size_t count() const noexcept { return count_; }

 private:
  std::size_t count_;
};

class UnknownState : public Error {
 public:
  using Error::Error;
};

/// An IS-mapping was consulted at an information state outside its domain.
class ThetaUndefined : public Error {
 public:
  using Error::Error;
};

class SupervisorUndefined : public Error {
 public:
  using Error::Error;
};

class InfeasibleHistory : public Error {
 public:
  using Error::Error;
};

class InfeasibleObservation : public Error {
 public:
  using Error::Error;
};

class ObservationNotEnabled : public Error {
 public:
  using Error::Error;
};

}  // namespace opsyn
