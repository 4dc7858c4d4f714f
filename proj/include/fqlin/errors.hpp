#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace fqlin {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
  virtual const char* kind() const noexcept { return "Error"; }
};

#define FQLIN_ERROR(Name)                                    \
  class Name : public Error {                                \
   public:                                                   \
    using Error::Error;                                      \
    const char* kind() const noexcept override { return #Name; } \
  };

FQLIN_ERROR(DomainError)
FQLIN_ERROR(DimensionMismatch)
FQLIN_ERROR(ZeroPolynomial)
FQLIN_ERROR(EnumerationTooLarge)
FQLIN_ERROR(DegenerateVertex)
FQLIN_ERROR(PreconditionViolated)
FQLIN_ERROR(ShapeMismatch)
FQLIN_ERROR(NotEvasive)
FQLIN_ERROR(NotCollinear)
FQLIN_ERROR(DegenerateTriple)
FQLIN_ERROR(CharacteristicTwo)
FQLIN_ERROR(ParameterViolation)
FQLIN_ERROR(SceneInvalid)

#undef FQLIN_ERROR

class ParseError : public Error {
 public:
  ParseError(const std::string& msg, std::size_t pos)
      : Error(msg + " at position " + std::to_string(pos)), pos_(pos) {}
  const char* kind() const noexcept override { return "ParseError"; }
  std::size_t position() const noexcept { return pos_; }

 private:
  std::size_t pos_;
};

}  // namespace fqlin
