#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace taxchain {

enum class ErrorKind {
  InvalidDistribution,
  InvalidProbability,
  NormalUnboundedQuantile,
  TailDegenerate,
  NegativeOrder,
  DensityVanishes,
  ArmLengthViolation,
  InfeasibleScenario,
  InvariantViolation,
  NonConvergence,
  FeasibilityLoss,
  NoTurningPoint,
  MultipleTurningPoints,
  RootNotBracketed,
  ConfigParseError,
  UnknownKey,
  IoError,
  UsageError,
};

std::string_view to_string(ErrorKind kind) noexcept;

// Every failure raised by the library carries a kind so that callers (the CLI
// in particular) can map it onto a stable exit code.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message);

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

[[noreturn]] void fail(ErrorKind kind, const std::string& message);

}  // namespace taxchain
