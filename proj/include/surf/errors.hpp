#pragma once
#include <stdexcept>
#include <string>

namespace surf {

enum class ErrorCode {
  // map construction / validation
  NotInvolution,
  NotPermutation,
  Disconnected,
  NegativeGenus,
  HasBoundary,
  // curves
  CurveNotSimple,
  CurvesNotDisjoint,
  IllegalIntersection,
  DegenerateCurve,
  // systole
  NoNoncontractibleCurve,
  NotApplicable,
  BudgetExceeded,
  // pants
  TangencyPresent,
  NotInSplitState,
  NotInMergeState,
  InitialBoundaryTooLong,
  ComponentNotDecomposable,
  GenusTooSmall,
  PaperBoundViolated,
  // genus zero
  WrongGenus,
  TooFewBoundaries,
  NotGenusZeroDecomposition,
  // random
  ConditionUnsatisfiable,
  // io / cli
  UnknownFixture,
  BadFile,
  Internal,
};

const char* error_code_name(ErrorCode c);

class SurfError : public std::runtime_error {
public:
  SurfError(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(error_code_name(code)) + ": " + what), code_(code) {}
  ErrorCode code() const { return code_; }

private:
  ErrorCode code_;
};

// Internal consistency check, always on.  These guard structural invariants
// of the half-edge surgery; a failure is a bug, not a user error.
#define SURF_CHECK(cond, msg)                                                \
  do {                                                                       \
    if (!(cond)) throw ::surf::SurfError(::surf::ErrorCode::Internal, msg);  \
  } while (0)

}  // namespace surf
