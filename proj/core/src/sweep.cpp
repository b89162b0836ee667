#include "taxchain/sweep.hpp"

#include <algorithm>
#include <atomic>
#include <cstdio>
#include <fstream>
#include <ostream>
#include <thread>

#include "taxchain/error.hpp"

namespace taxchain {

SweepRecord make_record(Structure structure, std::string param_name, double param_value,
                        const Outcome& o) {
  SweepRecord r;
  r.structure = structure;
  r.param_name = std::move(param_name);
  r.param_value = param_value;
  r.y = o.y;
  r.e = o.e;
  if (o.has_contract()) {
    r.b = o.b;
    r.pi_pc = o.pi_pc;
  }
  r.pi_r = o.pi_r;
  r.pi_hq = o.pi_hq;
  r.foc_residual = o.foc_residual;
  r.boundary_flag = o.boundary;
  r.converged = true;
  r.iterations = o.iterations;
  return r;
}

SweepRecord failed_record(Structure structure, std::string param_name, double param_value,
                          std::string error) {
  SweepRecord r;
  r.structure = structure;
  r.param_name = std::move(param_name);
  r.param_value = param_value;
  r.converged = false;
  r.error = std::move(error);
  return r;
}

std::vector<double> linear_grid(double from, double to, int steps) {
  if (steps < 1) fail(ErrorKind::UsageError, "steps must be >= 1");
  std::vector<double> out(steps);
  for (int i = 0; i < steps; ++i) {
    out[i] = steps == 1 ? from : from + (to - from) * i / (steps - 1);
  }
  if (steps > 1) out.back() = to;
  return out;
}

std::vector<SweepRecord> run_sweep(const Scenario& s, Structure structure, Param param,
                                   std::span<const double> values, int jobs) {
  std::vector<SweepRecord> out(values.size());
  const std::string name(to_string(param));
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < values.size(); i = next++) {
      try {
        out[i] = make_record(structure, name, values[i], solve(with_param(s, param, values[i]), structure));
      } catch (const Error& err) {
        out[i] = failed_record(structure, name, values[i], err.what());
      }
    }
  };
  const int threads = std::clamp<int>(jobs, 1, static_cast<int>(std::max<std::size_t>(1, values.size())));
  {
    std::vector<std::jthread> pool;
    for (int t = 1; t < threads; ++t) pool.emplace_back(worker);
    worker();
  }
  return out;
}

std::string format_number(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.9g", v);
  return buf;
}

namespace {

void cell(std::ostream& out, const std::optional<double>& v) {
  out << ',';
  if (v) out << format_number(*v);
}

}  // namespace

void write_csv(std::span<const SweepRecord> records, std::ostream& out) {
  out << kSweepHeader << '\n';
  for (const SweepRecord& r : records) {
    out << to_string(r.structure) << ',' << r.param_name << ',' << format_number(r.param_value);
    if (r.converged) {
      cell(out, r.y);
      cell(out, r.e);
      cell(out, r.b);
      cell(out, r.pi_r);
      cell(out, r.pi_pc);
      cell(out, r.pi_hq);
      cell(out, r.foc_residual);
      out << ',' << (r.boundary_flag.value_or(false) ? "true" : "false");
      out << ",true,";
      if (r.iterations) out << *r.iterations;
    } else {
      out << ",,,,,,,,,false,";
    }
    out << '\n';
  }
}

void write_csv(std::span<const SweepRecord> records, const std::filesystem::path& path) {
  if (records.empty()) fail(ErrorKind::UsageError, "write_csv needs at least one record");
  std::ofstream out(path, std::ios::binary);
  if (!out) fail(ErrorKind::IoError, "cannot open " + path.string() + " for writing");
  write_csv(records, out);
  out.flush();
  if (!out) fail(ErrorKind::IoError, "failed writing " + path.string());
}

std::string_view to_string(BoundaryStatus status) noexcept {
  switch (status) {
    case BoundaryStatus::Root: return "root";
    case BoundaryStatus::MarkupEverywhere: return "markup_everywhere";
    case BoundaryStatus::RoyaltyEverywhere: return "royalty_everywhere";
    case BoundaryStatus::Failed: return "failed";
  }
  return "unknown";
}

void write_boundary_csv(std::span<const BoundaryPoint> curve, std::ostream& out) {
  out << "alpha,beta,status,note\n";
  for (const BoundaryPoint& p : curve) {
    out << format_number(p.alpha) << ',';
    if (p.beta) out << format_number(*p.beta);
    std::string note = p.note;
    for (char& c : note) {
      if (c == ',' || c == '\n') c = ';';
    }
    out << ',' << to_string(p.status) << ',' << note << '\n';
  }
}

void write_boundary_csv(std::span<const BoundaryPoint> curve, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) fail(ErrorKind::IoError, "cannot open " + path.string() + " for writing");
  write_boundary_csv(curve, out);
  out.flush();
  if (!out) fail(ErrorKind::IoError, "failed writing " + path.string());
}

}  // namespace taxchain
