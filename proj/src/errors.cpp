#include "frontprop/errors.hpp"

namespace frontprop {

const char* to_string(Err e) {
  switch (e) {
    case Err::EmptyShape: return "EmptyShape";
    case Err::FullShape: return "FullShape";
    case Err::NoEta: return "NoEta";
    case Err::BadBand: return "BadBand";
    case Err::GridMismatch: return "GridMismatch";
    case Err::CflViolation: return "CflViolation";
    case Err::NegativeVelocity: return "NegativeVelocity";
    case Err::DomainTooSmall: return "DomainTooSmall";
    case Err::NoBand: return "NoBand";
    case Err::BadDelta: return "BadDelta";
    case Err::H3Violation: return "H3Violation";
    case Err::PaddingTooSmall: return "PaddingTooSmall";
    case Err::SolverDivergence: return "SolverDivergence";
    case Err::AlphaRangeViolation: return "AlphaRangeViolation";
    case Err::NoConvergence: return "NoConvergence";
    case Err::EmptyLevelSet: return "EmptyLevelSet";
    case Err::TouchesBoundary: return "TouchesBoundary";
    case Err::BadParams: return "BadParams";
    case Err::CertificateMissing: return "CertificateMissing";
    case Err::BandOutsideEta: return "BandOutsideEta";
    case Err::NonpositiveInput: return "NonpositiveInput";
    case Err::NotMonotone: return "NotMonotone";
    case Err::StepFailure: return "StepFailure";
    case Err::DivisionDegenerate: return "DivisionDegenerate";
    case Err::SingularTime: return "SingularTime";
    case Err::BadConfig: return "BadConfig";
    case Err::IoError: return "IoError";
  }
  return "UnknownError";
}

}  // namespace frontprop
