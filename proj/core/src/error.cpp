#include "taxchain/error.hpp"

namespace taxchain {

std::string_view to_string(ErrorKind kind) noexcept {
  switch (kind) {
    case ErrorKind::InvalidDistribution: return "InvalidDistribution";
    case ErrorKind::InvalidProbability: return "InvalidProbability";
    case ErrorKind::NormalUnboundedQuantile: return "NormalUnboundedQuantile";
    case ErrorKind::TailDegenerate: return "TailDegenerate";
    case ErrorKind::NegativeOrder: return "NegativeOrder";
    case ErrorKind::DensityVanishes: return "DensityVanishes";
    case ErrorKind::ArmLengthViolation: return "ArmLengthViolation";
    case ErrorKind::InfeasibleScenario: return "InfeasibleScenario";
    case ErrorKind::InvariantViolation: return "InvariantViolation";
    case ErrorKind::NonConvergence: return "NonConvergence";
    case ErrorKind::FeasibilityLoss: return "FeasibilityLoss";
    case ErrorKind::NoTurningPoint: return "NoTurningPoint";
    case ErrorKind::MultipleTurningPoints: return "MultipleTurningPoints";
    case ErrorKind::RootNotBracketed: return "RootNotBracketed";
    case ErrorKind::ConfigParseError: return "ConfigParseError";
    case ErrorKind::UnknownKey: return "UnknownKey";
    case ErrorKind::IoError: return "IoError";
    case ErrorKind::UsageError: return "UsageError";
  }
  return "Unknown";
}

Error::Error(ErrorKind kind, const std::string& message)
    : std::runtime_error(std::string(to_string(kind)) + ": " + message), kind_(kind) {}

void fail(ErrorKind kind, const std::string& message) { throw Error(kind, message); }

}  // namespace taxchain
