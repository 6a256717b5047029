#include "fraclab/params.hpp"

#include <sstream>

namespace fraclab {

const char* error_code_name(ErrorCode code) {
  switch (code) {
    case ErrorCode::Validation: return "VALIDATION";
    case ErrorCode::SpacingTooCoarse: return "SPACING_TOO_COARSE";
    case ErrorCode::DomainEmpty: return "DOMAIN_EMPTY";
    case ErrorCode::UnsupportedShape: return "UNSUPPORTED_SHAPE";
    case ErrorCode::GridMismatch: return "GRID_MISMATCH";
    case ErrorCode::ZeroFunction: return "ZERO_FUNCTION";
    case ErrorCode::OutOfMemory: return "OUT_OF_MEMORY";
    case ErrorCode::Geometry: return "GEOMETRY";
    case ErrorCode::UnresolvedRadius: return "UNRESOLVED_RADIUS";
    case ErrorCode::NoConvergence: return "NO_CONVERGENCE";
    case ErrorCode::InvalidQ: return "INVALID_Q";
    case ErrorCode::NonpositiveInput: return "NONPOSITIVE_INPUT";
    case ErrorCode::Io: return "IO";
  }
  return "UNKNOWN";
}

void Params::validate() const {
  std::ostringstream err;
  if (n != 1 && n != 2)
    err << "n must be 1 or 2, got " << n;
  else if (!(s > 0.0 && s < 1.0))
    err << "s must lie in (0,1), got " << s;
  else if (!(p > 1.0))
    err << "p must exceed 1, got " << p;
  else if (!(q > 1.0))
    err << "q must exceed 1, got " << q;
  else if (!(q < p_star()))
    err << "q must stay below p_star = " << p_star() << ", got " << q;
  else
    return;
  throw Error(ErrorCode::Validation, err.str());
}

void Params::validate_eigen_q() const {
  validate();
  if (q > p) {
    std::ostringstream err;
    err << "eigen solver requires q <= p, got q = " << q << ", p = " << p;
    throw Error(ErrorCode::InvalidQ, err.str());
  }
}

}  // namespace fraclab
