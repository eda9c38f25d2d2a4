#pragma once

#include <stdexcept>
#include <string>

namespace lcuwalk {

enum class ErrorKind {
  Range,
  Parameter,
  Parse,
  Hermiticity,
  Sparsity,
  Numeric,
  Capacity,
  Verification,
  Io,
};

const char* to_string(ErrorKind kind) noexcept;

/// Base exception for every failure raised by the library. The kind lets
/// callers (the CLI in particular) map failures onto exit codes without
/// string matching.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

#define LCUWALK_DEFINE_ERROR(Name, Kind)                                  \
  class Name : public Error {                                             \
   public:                                                                \
    explicit Name(const std::string& what) : Error(ErrorKind::Kind, what) {} \
  };

LCUWALK_DEFINE_ERROR(RangeError, Range)
LCUWALK_DEFINE_ERROR(ParameterError, Parameter)
LCUWALK_DEFINE_ERROR(ParseError, Parse)
LCUWALK_DEFINE_ERROR(HermiticityError, Hermiticity)
LCUWALK_DEFINE_ERROR(SparsityError, Sparsity)
LCUWALK_DEFINE_ERROR(NumericError, Numeric)
LCUWALK_DEFINE_ERROR(CapacityError, Capacity)
LCUWALK_DEFINE_ERROR(VerificationError, Verification)
LCUWALK_DEFINE_ERROR(IoError, Io)

#undef LCUWALK_DEFINE_ERROR

}  // namespace lcuwalk
