#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace ffd {

/// Error categories shared by the whole library. The CLI maps these to
/// exit codes; the python module re-raises them as ffdiamond.Error.
enum class Errc {
  NotPrime,
  NotIrreducible,
  NotMonic,
  DivisionByZero,
  ZeroElement,
  CtxMismatch,
  NotASubfieldCardinality,
  CardinalityCapExceeded,
  NotCoprime,
  BudgetExceeded,
  DegreeZero,
  SyntaxError,
  CoefficientOutOfField,
  PreconditionViolated,
  WeakCancellationFails,
  EquivalenceViolation,
  CoefficientDescentFailure,
  NoFastPath,
  InternalError,
};

const char* errc_name(Errc c);

class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& msg)
      : std::runtime_error(std::string(errc_name(code)) + ": " + msg), code_(code) {}
  Errc code() const { return code_; }

 private:
  Errc code_;
};

[[noreturn]] inline void fail(Errc code, const std::string& msg) { throw Error(code, msg); }

/// Enumeration budget (candidate count) and field cardinality cap.
/// cap == UINT64_MAX means "anything representable in 64 bits".
struct Limits {
  std::uint64_t budget = 1ull << 24;
  std::uint64_t cap = UINT64_MAX;
};

/// Fixed default seed used everywhere randomness is reachable, so that
/// identical invocations reproduce byte-identical output. 2^64 / golden ratio.
inline constexpr std::uint64_t kDefaultSeed = 0x9E3779B97F4A7C15ull;

}  // namespace ffd
