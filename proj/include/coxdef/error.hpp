#pragma once
#include <stdexcept>
#include <string>

namespace coxdef {

enum class ErrorKind {
  NonPolyhedral,
  NonTrivalentVertex,
  TetrahedronUnsupported,
  UnknownName,
  Precondition,
  NoStandardVertex,
  NoConvergence,
  WrongBranch,
  ValidationFailed,
  UnsupportedN,
  PathFailure,
  NotNormalized,
  AmbiguousRank,
  CheckFailed,
  NotOrderable,
  NotNormalType,
  TooManyKernelDims,
  TrackingFailed,
  Undecided,
  DivisionByZero,
  ResourceExceeded,
  NonTriangular,
};

const char* kind_name(ErrorKind k);

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(std::string(kind_name(kind)) + ": " + what), kind_(kind) {}
  ErrorKind kind() const { return kind_; }
  // 2 precondition, 3 numerical ambiguity, 4 resource budget, 1 anything else
  int exit_code() const;

 private:
  ErrorKind kind_;
};

inline const char* kind_name(ErrorKind k) {
  switch (k) {
    case ErrorKind::NonPolyhedral: return "NonPolyhedral";
    case ErrorKind::NonTrivalentVertex: return "NonTrivalentVertex";
    case ErrorKind::TetrahedronUnsupported: return "TetrahedronUnsupported";
    case ErrorKind::UnknownName: return "UnknownName";
    case ErrorKind::Precondition: return "Precondition";
    case ErrorKind::NoStandardVertex: return "NoStandardVertex";
    case ErrorKind::NoConvergence: return "NoConvergence";
    case ErrorKind::WrongBranch: return "WrongBranch";
    case ErrorKind::ValidationFailed: return "ValidationFailed";
    case ErrorKind::UnsupportedN: return "UnsupportedN";
    case ErrorKind::PathFailure: return "PathFailure";
    case ErrorKind::NotNormalized: return "NotNormalized";
    case ErrorKind::AmbiguousRank: return "AmbiguousRank";
    case ErrorKind::CheckFailed: return "CheckFailed";
    case ErrorKind::NotOrderable: return "NotOrderable";
    case ErrorKind::NotNormalType: return "NotNormalType";
    case ErrorKind::TooManyKernelDims: return "TooManyKernelDims";
    case ErrorKind::TrackingFailed: return "TrackingFailed";
    case ErrorKind::Undecided: return "Undecided";
    case ErrorKind::DivisionByZero: return "DivisionByZero";
    case ErrorKind::ResourceExceeded: return "ResourceExceeded";
    case ErrorKind::NonTriangular: return "NonTriangular";
  }
  return "Error";
}

inline int Error::exit_code() const {
  switch (kind_) {
    case ErrorKind::AmbiguousRank: return 3;
    case ErrorKind::ResourceExceeded: return 4;
    case ErrorKind::NonPolyhedral:
    case ErrorKind::NonTrivalentVertex:
    case ErrorKind::TetrahedronUnsupported:
    case ErrorKind::UnknownName:
    case ErrorKind::Precondition:
    case ErrorKind::UnsupportedN:
    case ErrorKind::NotOrderable:
    case ErrorKind::NotNormalType:
    case ErrorKind::NotNormalized:
      return 2;
    default: return 1;
  }
}

}  // namespace coxdef
