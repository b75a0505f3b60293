// genvi - general variational inequality and coincidence point toolkit
// Copyright 2026 genvi contributors
// Licensed under Apache 2.0

#include "genvi/error.hpp"

namespace genvi {

const char* to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::DimensionMismatch: return "DimensionMismatch";
    case ErrorCode::UnsupportedVariant: return "UnsupportedVariant";
    case ErrorCode::DimensionTooLarge: return "DimensionTooLarge";
    case ErrorCode::UnboundedSet: return "UnboundedSet";
    case ErrorCode::EmptySet: return "EmptySet";
    case ErrorCode::NonConvergence: return "NonConvergence";
    case ErrorCode::InversionFailed: return "InversionFailed";
    case ErrorCode::CertificationFailed: return "CertificationFailed";
    case ErrorCode::EmptyGrid: return "EmptyGrid";
    case ErrorCode::GridTooLarge: return "GridTooLarge";
    case ErrorCode::Schema: return "Schema";
    case ErrorCode::Io: return "Io";
  }
  return "Unknown";
}

}  // namespace genvi
