#ifndef GHK_ERROR_HPP_
#define GHK_ERROR_HPP_

#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace ghk {

enum class ErrorKind {
  InvalidDocument,
  IncompleteTable,
  NotComposable,
  NonAssociative,
  BadIdentity,
  BadInverse,
  NotFunctorial,
  ZeroOnNonInvertible,
  NonZeroOnInvertible,
  DegreeOverflow,
  TruncationMismatch,
  IdealCosetMismatch,
  LemmaViolation,
  InvertibleInput,
  WrongRank,
  NotBijective,
  EndpointMismatch,
  CubeFailure,
  BadSplit,
  AxiomFailure,
  SquareIncompatible,
  ColorChanged,
  BoundTooSmall,
  PreconditionFailed,
  NonUniqueRepresentation,
  NotFailing,
};

std::string_view to_string(ErrorKind kind);

// Every validation failure in the library is reported through this type.
// `witness` names the arrows/edges (by document id) that exhibit the failure.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, std::string const& message,
        std::vector<std::string> witness = {})
      : std::runtime_error(std::string(to_string(kind)) + ": " + message),
        kind_(kind),
        witness_(std::move(witness)) {}

  ErrorKind kind() const noexcept { return kind_; }
  std::vector<std::string> const& witness() const noexcept { return witness_; }

 private:
  ErrorKind kind_;
  std::vector<std::string> witness_;
};

}  // namespace ghk

#endif  // GHK_ERROR_HPP_
