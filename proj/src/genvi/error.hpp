// genvi - general variational inequality and coincidence point toolkit
// Copyright 2026 genvi contributors
// Licensed under Apache 2.0

#pragma once

#include <stdexcept>
#include <string>

namespace genvi {

enum class ErrorCode {
  InvalidArgument,
  DimensionMismatch,
  UnsupportedVariant,
  DimensionTooLarge,
  UnboundedSet,
  EmptySet,
  NonConvergence,
  InversionFailed,
  CertificationFailed,
  EmptyGrid,
  GridTooLarge,
  Schema,
  Io,
};

const char* to_string(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

// Schema violation in a problem file; `pointer` is an RFC 6901 JSON pointer
// to the offending value.
class SchemaError : public Error {
 public:
  SchemaError(std::string pointer, const std::string& what)
      : Error(ErrorCode::Schema, (pointer.empty() ? std::string("(root)") : pointer) + ": " + what),
        pointer_(std::move(pointer)) {}

  const std::string& pointer() const noexcept { return pointer_; }

 private:
  std::string pointer_;
};

inline void require_dims(long expected, long actual, const char* what) {
  if (expected != actual) {
    throw Error(ErrorCode::DimensionMismatch,
                std::string(what) + ": expected dimension " +
                    std::to_string(expected) + ", got " +
                    std::to_string(actual));
  }
}

}  // namespace genvi
