#include "lambdet/error.hpp"

namespace lambdet {

const char* kind_name(ErrorKind k) {
  switch (k) {
    case ErrorKind::DivisionByZero: return "DivisionByZero";
    case ErrorKind::PoleAtSubstitution: return "PoleAtSubstitution";
    case ErrorKind::PoleAtZero: return "PoleAtZero";
    case ErrorKind::ParseError: return "ParseError";
    case ErrorKind::NotAlternating: return "NotAlternating";
    case ErrorKind::BadRowSum: return "BadRowSum";
    case ErrorKind::BadColSum: return "BadColSum";
    case ErrorKind::SizeTooLarge: return "SizeTooLarge";
    case ErrorKind::NotACornerSum: return "NotACornerSum";
    case ErrorKind::SizeMismatch: return "SizeMismatch";
    case ErrorKind::OrderMismatch: return "OrderMismatch";
    case ErrorKind::Incompatible: return "Incompatible";
    case ErrorKind::UndefinedDeterminant: return "UndefinedDeterminant";
    case ErrorKind::ZeroFaceWeight: return "ZeroFaceWeight";
    case ErrorKind::PoleInSequence: return "PoleInSequence";
    case ErrorKind::NotOnPeriodicityLocus: return "NotOnPeriodicityLocus";
    case ErrorKind::PoleInFlow: return "PoleInFlow";
    case ErrorKind::SingularCurve: return "SingularCurve";
    case ErrorKind::NotInvertible: return "NotInvertible";
    case ErrorKind::Internal: return "Internal";
  }
  return "Unknown";
}

}  // namespace lambdet
