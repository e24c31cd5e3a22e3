#pragma once
#include <stdexcept>
#include <string>

namespace frontprop {

// Failure codes shared by all modules. Each maps 1:1 to a contract
// violation named in the operation that throws it.
enum class Err {
  EmptyShape,
  FullShape,
  NoEta,
  BadBand,
  GridMismatch,
  CflViolation,
  NegativeVelocity,
  DomainTooSmall,
  NoBand,
  BadDelta,
  H3Violation,
  PaddingTooSmall,
  SolverDivergence,
  AlphaRangeViolation,
  NoConvergence,
  EmptyLevelSet,
  TouchesBoundary,
  BadParams,
  CertificateMissing,
  BandOutsideEta,
  NonpositiveInput,
  NotMonotone,
  StepFailure,
  DivisionDegenerate,
  SingularTime,
  BadConfig,
  IoError,
};

const char* to_string(Err e);

class Error : public std::runtime_error {
 public:
  Error(Err code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what),
        code_(code) {}
  Err code() const { return code_; }

 private:
  Err code_;
};

[[noreturn]] inline void fail(Err code, const std::string& what) {
  throw Error(code, what);
}

inline void require(bool ok, Err code, const std::string& what) {
  if (!ok) fail(code, what);
}

}  // namespace frontprop
