#pragma once

#include <stdexcept>
#include <string>

namespace fgred {

// Base for all domain errors; the CLI maps these to exit code 2 unless a
// more specific code applies.
struct Error : std::runtime_error {
  explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

#define FGRED_ERROR(Name)                                   \
  struct Name : Error {                                     \
    explicit Name(const std::string& msg = #Name) : Error(msg) {} \
  }

FGRED_ERROR(EqualRanks);
FGRED_ERROR(NotSeparable);
FGRED_ERROR(NotAMember);
FGRED_ERROR(BadParams);
FGRED_ERROR(ShapeMismatch);
FGRED_ERROR(NegativeCycleDetected);
FGRED_ERROR(OracleProtocol);
FGRED_ERROR(RetryBudgetExhausted);
FGRED_ERROR(QuadBudgetExceeded);
FGRED_ERROR(BadBucketCount);
FGRED_ERROR(TooManyNodes);
FGRED_ERROR(NotTripartite);
FGRED_ERROR(NotSimple);
FGRED_ERROR(TooManyColors);
FGRED_ERROR(BadBlock);
FGRED_ERROR(TooManyPerColor);
FGRED_ERROR(NotLight);
FGRED_ERROR(MissingLedger);
FGRED_ERROR(UnknownPipeline);
FGRED_ERROR(Overflow);

#undef FGRED_ERROR

// Thrown when a file fails to parse; carries a location hint.
struct ParseError : Error {
  explicit ParseError(const std::string& where, const std::string& what)
      : Error("ParseError at " + where + ": " + what), location(where) {}
  std::string location;
};

// Raised by the tattling harness when a reduction touches an input real
// outside the allowed comparison predicates.
struct AuditViolation : std::logic_error {
  explicit AuditViolation(const std::string& what)
      : std::logic_error("audit violation: " + what) {}
};

}  // namespace fgred
