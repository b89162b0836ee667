#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

#include "taxchain/error.hpp"

namespace taxchain::cli {

// Process exit codes.
inline constexpr int kExitOk = 0;
inline constexpr int kExitFailure = 1;  // usage errors, failed verification
inline constexpr int kExitInfeasible = 2;
inline constexpr int kExitNonConvergence = 3;
inline constexpr int kExitConfig = 4;
inline constexpr int kExitDetection = 5;

int exit_code_for(ErrorKind kind) noexcept;

/// Entry point shared by the executable and the tests. args[0] is the program
/// name. Commands: solve, sweep, threshold, boundary, reproduce, verify.
int run_command(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

std::filesystem::path default_preset_dir();

/// Reproduction presets fig4 .. fig8. Writes one CSV per curve into out_dir.
/// Returns the files written, in a fixed order.
std::vector<std::filesystem::path> reproduce_figure(const std::string& figure,
                                                    const std::filesystem::path& preset_dir,
                                                    const std::filesystem::path& out_dir, int jobs);

struct VerifyOptions {
  int count = 100;
  unsigned long long seed = 1;
  bool quiet = false;
};

/// Oracle equivalence on random scenarios plus the algebraic invariants.
/// Prints one PASS/FAIL line per check; returns true when everything passed.
bool run_verify(const VerifyOptions& options, std::ostream& out);

}  // namespace taxchain::cli
