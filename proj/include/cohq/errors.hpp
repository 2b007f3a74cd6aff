#pragma once

#include <stdexcept>
#include <string>

namespace cohq {

/// Base class of all library errors.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

#define COHQ_DEFINE_ERROR(Name)          \
  class Name : public Error {            \
   public:                               \
    using Error::Error;                  \
  }

COHQ_DEFINE_ERROR(DomainError);       // point violates a space's domain predicate
COHQ_DEFINE_ERROR(SingularityError);  // kernel formula denominator vanished
COHQ_DEFINE_ERROR(NotProjectiveError);
COHQ_DEFINE_ERROR(NotPositiveError);
COHQ_DEFINE_ERROR(NotAdmissibleError);
COHQ_DEFINE_ERROR(NotShadowError);
COHQ_DEFINE_ERROR(MissingAdjointError);
COHQ_DEFINE_ERROR(OrbitNotClosedError);
COHQ_DEFINE_ERROR(IllConditionedError);
COHQ_DEFINE_ERROR(DimensionError);
COHQ_DEFINE_ERROR(SingularError);
COHQ_DEFINE_ERROR(NotUnitaryError);
COHQ_DEFINE_ERROR(IndexError);
COHQ_DEFINE_ERROR(DegreeError);
COHQ_DEFINE_ERROR(QuadratureError);
COHQ_DEFINE_ERROR(ConfigError);
COHQ_DEFINE_ERROR(IoError);
COHQ_DEFINE_ERROR(ParseError);

#undef COHQ_DEFINE_ERROR

}  // namespace cohq
