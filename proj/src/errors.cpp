#include "toric/errors.hpp"

namespace toric {

const char* to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::InvalidArgument: return "InvalidArgument";
    case ErrorKind::NonPrimitiveNormal: return "NonPrimitiveNormal";
    case ErrorKind::Unbounded: return "Unbounded";
    case ErrorKind::EmptyInterior: return "EmptyInterior";
    case ErrorKind::NonSimpleVertex: return "NonSimpleVertex";
    case ErrorKind::NonUnimodularVertex: return "NonUnimodularVertex";
    case ErrorKind::RedundantFacet: return "RedundantFacet";
    case ErrorKind::NotUnimodular: return "NotUnimodular";
    case ErrorKind::BoundaryPoint: return "BoundaryPoint";
    case ErrorKind::OutsidePolytope: return "OutsidePolytope";
    case ErrorKind::NotPositiveDefinite: return "NotPositiveDefinite";
    case ErrorKind::NoConvergence: return "NoConvergence";
    case ErrorKind::DegenerateForm: return "DegenerateForm";
    case ErrorKind::ZeroFunction: return "ZeroFunction";
    case ErrorKind::IllConditionedGram: return "IllConditionedGram";
    case ErrorKind::NotComputed: return "NotComputed";
    case ErrorKind::ParseError: return "ParseError";
    case ErrorKind::SchemaViolation: return "SchemaViolation";
  }
  return "Unknown";
}

bool is_validation_error(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::NonPrimitiveNormal:
    case ErrorKind::Unbounded:
    case ErrorKind::EmptyInterior:
    case ErrorKind::NonSimpleVertex:
    case ErrorKind::NonUnimodularVertex:
    case ErrorKind::RedundantFacet:
    case ErrorKind::NotUnimodular:
    case ErrorKind::ParseError:
    case ErrorKind::SchemaViolation:
    case ErrorKind::InvalidArgument:
      return true;
    default:
      return false;
  }
}

}  // namespace toric
