#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace ncclab {

enum class Errc {
  // arithmetic
  MixedFields,
  DivisionByZero,
  NotPrime,
  NoSuchRoot,
  LengthMismatch,
  DuplicatePoint,
  // data structures
  BudgetExceeded,
  NonAdaptivityViolation,
  Unanswerable,
  NotAPermutation,
  InvalidArgument,
  // reduction
  AdaptiveDSRejected,
  MissingMessage,
  InconsistentInput,
  EmptyInput,
  DegenerateSize,
  // networks and coding
  CyclicNetwork,
  ArityMismatch,
  EmptyCodebook,
  SearchSpaceTooLarge,
  Unbounded,
  Infeasible,
  // circuits
  WidthMismatch,
  InvalidCut,
  UnsupportedWidth,
  // io
  ParseError,
};

std::string_view errc_name(Errc code) noexcept;

// Single exception type for the library; callers branch on code().
class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& what)
      : std::runtime_error(std::string(errc_name(code)) + ": " + what), code_(code) {}

  Errc code() const noexcept { return code_; }

 private:
  Errc code_;
};

}  // namespace ncclab
