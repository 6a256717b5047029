#pragma once

#include <stdexcept>
#include <string>

namespace fraclab {

enum class ErrorCode {
  Validation,
  SpacingTooCoarse,
  DomainEmpty,
  UnsupportedShape,
  GridMismatch,
  ZeroFunction,
  OutOfMemory,
  Geometry,
  UnresolvedRadius,
  NoConvergence,
  InvalidQ,
  NonpositiveInput,
  Io,
};

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(what), code_(code) {}

  ErrorCode code() const { return code_; }

 private:
  ErrorCode code_;
};

const char* error_code_name(ErrorCode code);

}  // namespace fraclab
