#pragma once

#include <stdexcept>
#include <string>

namespace singletlab {

// All library failures derive from Error so callers can catch once and
// still report which contract was broken via kind().
class Error : public std::runtime_error {
 public:
  explicit Error(const std::string& what) : std::runtime_error(what) {}
  virtual const char* kind() const noexcept { return "error"; }
};

class DimensionError : public Error {
 public:
  using Error::Error;
  const char* kind() const noexcept override { return "dimension"; }
};

class PreconditionError : public Error {
 public:
  using Error::Error;
  const char* kind() const noexcept override { return "precondition"; }
};

// Raised when a subsystem is requested from a state that does not factor
// across that cut.
class EntangledError : public Error {
 public:
  using Error::Error;
  const char* kind() const noexcept override { return "entangled"; }
};

class FormatError : public Error {
 public:
  using Error::Error;
  const char* kind() const noexcept override { return "format"; }
};

}  // namespace singletlab
