#pragma once

#include <stdexcept>
#include <string>

namespace blmp {

/// Root of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

#define BLMP_DEFINE_ERROR(Name)                                   \
  class Name : public Error {                                     \
   public:                                                        \
    explicit Name(const std::string& what) : Error(#Name ": " + what) {} \
  }

// jet kernel
BLMP_DEFINE_ERROR(DivisionNearSingularity);
BLMP_DEFINE_ERROR(BranchCutViolation);
BLMP_DEFINE_ERROR(OrderExceeded);

// grassmann / hirota
BLMP_DEFINE_ERROR(GeneratorSetMismatch);
BLMP_DEFINE_ERROR(ParityUndefined);

// bell
BLMP_DEFINE_ERROR(OrderCapExceeded);
BLMP_DEFINE_ERROR(MissingSymbol);
BLMP_DEFINE_ERROR(ParityMismatch);

// solutions
BLMP_DEFINE_ERROR(NonExactDivision);
BLMP_DEFINE_ERROR(CapExceeded);
BLMP_DEFINE_ERROR(SingularPoint);
BLMP_DEFINE_ERROR(InvalidKappa);
BLMP_DEFINE_ERROR(DegenerateWronskian);
BLMP_DEFINE_ERROR(InvalidArgument);

// susy / backlund
BLMP_DEFINE_ERROR(InvariantViolation);
BLMP_DEFINE_ERROR(NegativeQPrime);
BLMP_DEFINE_ERROR(NoConvergence);

// descriptors
BLMP_DEFINE_ERROR(DescriptorError);

#undef BLMP_DEFINE_ERROR

}  // namespace blmp
