#pragma once

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>

namespace toric {

enum class ErrorKind {
  InvalidArgument,
  NonPrimitiveNormal,
  Unbounded,
  EmptyInterior,
  NonSimpleVertex,
  NonUnimodularVertex,
  RedundantFacet,
  NotUnimodular,
  BoundaryPoint,
  OutsidePolytope,
  NotPositiveDefinite,
  NoConvergence,
  DegenerateForm,
  ZeroFunction,
  IllConditionedGram,
  NotComputed,
  ParseError,
  SchemaViolation,
};

const char* to_string(ErrorKind kind);

// Single exception type for the library. `index()` carries the facet or
// vertex index for the kinds that name one.
class ToricError : public std::runtime_error {
 public:
  ToricError(ErrorKind kind, const std::string& message,
             std::optional<std::size_t> index = std::nullopt)
      : std::runtime_error(std::string(to_string(kind)) + ": " + message),
        kind_(kind),
        index_(index) {}

  ErrorKind kind() const noexcept { return kind_; }
  std::optional<std::size_t> index() const noexcept { return index_; }

 private:
  ErrorKind kind_;
  std::optional<std::size_t> index_;
};

// True for the kinds that mean "the input does not describe a valid object"
// as opposed to numerical or internal failures.
bool is_validation_error(ErrorKind kind);

}  // namespace toric
