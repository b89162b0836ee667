#pragma once

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "taxchain/scenario.hpp"
#include "taxchain/statics.hpp"

namespace taxchain {

/// One row of a parameter sweep. Rows that failed to solve keep only the
/// identifying columns; every decision cell stays empty.
struct SweepRecord {
  Structure structure = Structure::Commissionaire;
  std::string param_name;
  double param_value = 0.0;
  std::optional<double> y;
  std::optional<double> e;
  std::optional<double> b;      // R only
  std::optional<double> pi_r;
  std::optional<double> pi_pc;  // R only
  std::optional<double> pi_hq;
  std::optional<double> foc_residual;
  std::optional<bool> boundary_flag;
  bool converged = false;
  std::optional<int> iterations;
  std::string error;  // diagnostic for failed rows, not written to CSV
};

inline constexpr const char* kSweepHeader =
    "structure,param_name,param_value,y,e,b,pi_r,pi_pc,pi_hq,foc_residual,boundary_flag,"
    "converged,iterations";

SweepRecord make_record(Structure structure, std::string param_name, double param_value,
                        const Outcome& outcome);
SweepRecord failed_record(Structure structure, std::string param_name, double param_value,
                          std::string error);

/// Inclusive linear grid; steps == 1 yields {from}.
std::vector<double> linear_grid(double from, double to, int steps);

/// Solves every point independently on `jobs` worker threads. Output order
/// follows `values`.
std::vector<SweepRecord> run_sweep(const Scenario& s, Structure structure, Param param,
                                   std::span<const double> values, int jobs = 1);

/// Header plus one line per record, 9 significant digits, '\n' endings.
void write_csv(std::span<const SweepRecord> records, std::ostream& out);
void write_csv(std::span<const SweepRecord> records, const std::filesystem::path& path);

/// alpha,beta,status,note rows for a dominance curve; gaps leave beta empty.
void write_boundary_csv(std::span<const BoundaryPoint> curve, std::ostream& out);
void write_boundary_csv(std::span<const BoundaryPoint> curve, const std::filesystem::path& path);

std::string_view to_string(BoundaryStatus status) noexcept;

/// "%.9g" formatting used for every numeric CSV cell.
std::string format_number(double v);

}  // namespace taxchain
