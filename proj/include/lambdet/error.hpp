#pragma once

#include <stdexcept>
#include <string>

namespace lambdet {

enum class ErrorKind {
  DivisionByZero,
  PoleAtSubstitution,
  PoleAtZero,
  ParseError,
  NotAlternating,
  BadRowSum,
  BadColSum,
  SizeTooLarge,
  NotACornerSum,
  SizeMismatch,
  OrderMismatch,
  Incompatible,
  UndefinedDeterminant,
  ZeroFaceWeight,
  PoleInSequence,
  NotOnPeriodicityLocus,
  PoleInFlow,
  SingularCurve,
  NotInvertible,
  Internal,
};

const char* kind_name(ErrorKind k);

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(what), kind_(kind) {}

  ErrorKind kind() const { return kind_; }

 private:
  ErrorKind kind_;
};

[[noreturn]] inline void fail(ErrorKind k, const std::string& msg) {
  throw Error(k, std::string(kind_name(k)) + ": " + msg);
}

}  // namespace lambdet
