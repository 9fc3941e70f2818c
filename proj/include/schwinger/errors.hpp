#pragma once

#include <stdexcept>
#include <string>

namespace schwinger {

/// Failure taxonomy shared by the whole pipeline. Degeneracy and caustics
/// are expected outcomes of the method, not programming errors, so they get
/// their own codes and callers can branch on them.
enum class ErrorCode {
  InvalidArgument,      ///< bad parameter (non-finite value, t <= 0, ...)
  DegenerateMap,        ///< endpoint inversion impossible (conserved variable)
  Caustic,              ///< requested time at/past a zero of the inversion entry
  BranchCut,            ///< complex square-root branch would be crossed
  RepMismatch,          ///< kernel/state representations disagree
  GridTooSmall,         ///< packet support leaks past the grid boundary
  StepCount,            ///< evolution step guard violated
  UnsupportedCoupling,  ///< operation cannot handle the symmetrized XP term
  BadFormat,            ///< malformed serialized input
};

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

const char* error_code_name(ErrorCode code) noexcept;

}  // namespace schwinger
