#pragma once

#include <stdexcept>
#include <string>

namespace usvplan {

// Base of every error raised by the library. Callers that only care about
// "something went wrong" catch this; the CLI maps subclasses to exit codes.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class InvalidInput : public Error {
 public:
  using Error::Error;
};

class InvalidInterval : public Error {
 public:
  using Error::Error;
};

class NumericConditioning : public Error {
 public:
  using Error::Error;
};

class PlanningFailed : public Error {
 public:
  PlanningFailed(const std::string& reason, const std::string& detail = {})
      : Error(detail.empty() ? reason : reason + ": " + detail), reason_(reason) {}

  const std::string& reason() const noexcept { return reason_; }

 private:
  std::string reason_;
};

class IoError : public Error {
 public:
  using Error::Error;
};

}  // namespace usvplan
