#ifndef REALTHETA_ERROR_HPP
#define REALTHETA_ERROR_HPP

#include <stdexcept>
#include <string>
#include <string_view>

namespace realtheta {

enum class ErrorKind {
  InadmissibleType,
  DimensionMismatch,
  NotSymmetric,
  NotUnimodular,
  CongruenceViolated,
  NotSymplectic,
  DiasymmetricInput,
  NotInSiegel,
  TypeMismatch,
  RealityViolated,
  InvalidQ,
  PreconditionViolated,
  NonIntegralDoubledRealPart,
  NotStandardForm,
  SamplingExhausted,
  RadiusCapHit,
  NumericalRange,
  ParseError,
};

std::string_view to_string(ErrorKind kind);

/// Every failure raised by the library. The kind is stable and is what the CLI
/// maps onto exit codes; the message is for humans.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message)
      : std::runtime_error(std::string(to_string(kind)) + ": " + message), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace realtheta

#endif  // REALTHETA_ERROR_HPP
