#pragma once

#include <stdexcept>
#include <string>

namespace modelkit {

// Base class for all domain errors thrown by the library.  Every error keeps
// a short machine-readable code next to the human-readable message so the CLI
// can emit structured error objects.
class Error : public std::runtime_error {
public:
  Error(std::string code, const std::string& msg)
      : std::runtime_error(msg), code_(std::move(code)) {}
  const std::string& code() const noexcept { return code_; }

private:
  std::string code_;
};

#define MODELKIT_DEFINE_ERROR(NAME)                           \
  class NAME : public Error {                                 \
  public:                                                     \
    explicit NAME(const std::string& msg) : Error(#NAME, msg) {} \
  }

MODELKIT_DEFINE_ERROR(NonUpperHalfZero);
MODELKIT_DEFINE_ERROR(NonUpperHalfPoint);
MODELKIT_DEFINE_ERROR(NonRealPoint);
MODELKIT_DEFINE_ERROR(PoleHit);
MODELKIT_DEFINE_ERROR(TailNotBounded);
MODELKIT_DEFINE_ERROR(GridTooCoarse);
MODELKIT_DEFINE_ERROR(NotIntegrable);
MODELKIT_DEFINE_ERROR(SingularitySwamp);
MODELKIT_DEFINE_ERROR(IllConditionedBasis);
MODELKIT_DEFINE_ERROR(DegenerateSystem);
MODELKIT_DEFINE_ERROR(ToleranceNotMet);
MODELKIT_DEFINE_ERROR(FiniteBlaschkeRejected);
MODELKIT_DEFINE_ERROR(InexactBracket);
MODELKIT_DEFINE_ERROR(InexactDensity);
MODELKIT_DEFINE_ERROR(InternalInconsistency);
MODELKIT_DEFINE_ERROR(SchemaError);

#undef MODELKIT_DEFINE_ERROR

}  // namespace modelkit
