#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace congru {

/// Failure categories shared by every module. The CLI maps them to exit codes.
enum class ErrorKind {
  Singular,
  SizeMismatch,
  ArityMismatch,
  InvalidEpsilon,
  InvalidField,
  NotSkew,
  SingularMobius,
  LinearlyDependent,
  MixedSymmetryTypes,
  RadicalCubeNonzero,
  NotHomogeneousSymmetry,
  NotCommutative,
  WrongCommutatorDim,
  NotLie,
  NotPrimeField,
  UnrealizableLabel,
  DeskScaleExceeded,
  MalformedInput,
  Internal,
};

constexpr std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::Singular: return "Singular";
    case ErrorKind::SizeMismatch: return "SizeMismatch";
    case ErrorKind::ArityMismatch: return "ArityMismatch";
    case ErrorKind::InvalidEpsilon: return "InvalidEpsilon";
    case ErrorKind::InvalidField: return "InvalidField";
    case ErrorKind::NotSkew: return "NotSkew";
    case ErrorKind::SingularMobius: return "SingularMobius";
    case ErrorKind::LinearlyDependent: return "LinearlyDependent";
    case ErrorKind::MixedSymmetryTypes: return "MixedSymmetryTypes";
    case ErrorKind::RadicalCubeNonzero: return "RadicalCubeNonzero";
    case ErrorKind::NotHomogeneousSymmetry: return "NotHomogeneousSymmetry";
    case ErrorKind::NotCommutative: return "NotCommutative";
    case ErrorKind::WrongCommutatorDim: return "WrongCommutatorDim";
    case ErrorKind::NotLie: return "NotLie";
    case ErrorKind::NotPrimeField: return "NotPrimeField";
    case ErrorKind::UnrealizableLabel: return "UnrealizableLabel";
    case ErrorKind::DeskScaleExceeded: return "DeskScaleExceeded";
    case ErrorKind::MalformedInput: return "MalformedInput";
    case ErrorKind::Internal: return "Internal";
  }
  return "Unknown";
}

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

[[noreturn]] inline void fail(ErrorKind kind, const std::string& what) { throw Error(kind, what); }

inline void require(bool cond, ErrorKind kind, const std::string& what) {
  if (!cond) fail(kind, what);
}

}  // namespace congru
