#include "cli/commands.hpp"

#include <CLI11.hpp>

#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>

#include "taxchain/config.hpp"
#include "taxchain/equilibrium_c.hpp"
#include "taxchain/equilibrium_r.hpp"
#include "taxchain/statics.hpp"
#include "taxchain/sweep.hpp"

namespace taxchain::cli {

int exit_code_for(ErrorKind kind) noexcept {
  switch (kind) {
    case ErrorKind::InfeasibleScenario:
    case ErrorKind::ArmLengthViolation:
    case ErrorKind::FeasibilityLoss:
      return kExitInfeasible;
    case ErrorKind::NonConvergence:
    case ErrorKind::DensityVanishes:
      return kExitNonConvergence;
    case ErrorKind::ConfigParseError:
    case ErrorKind::UnknownKey:
    case ErrorKind::InvariantViolation:
    case ErrorKind::InvalidDistribution:
    case ErrorKind::IoError:
      return kExitConfig;
    case ErrorKind::NoTurningPoint:
    case ErrorKind::MultipleTurningPoints:
    case ErrorKind::RootNotBracketed:
      return kExitDetection;
    default:
      return kExitFailure;
  }
}

std::filesystem::path default_preset_dir() { return TAXCHAIN_PRESET_DIR; }

namespace {

std::string num(double v) { return format_number(v); }

void print_equilibrium(const EquilibriumC& eq, std::ostream& out) {
  out << "structure = C\n"
      << "y_star = " << num(eq.y_star) << '\n'
      << "e_star = " << num(eq.e_star) << '\n'
      << "pi_r = " << num(eq.pi_r) << '\n'
      << "pi_hq = " << num(eq.pi_hq) << '\n'
      << "foc_residual = " << num(eq.foc_residual) << '\n'
      << "second_order_ok = " << (eq.second_order_ok ? "true" : "false") << '\n'
      << "boundary = " << (eq.boundary() ? "true" : "false") << '\n'
      << "iterations = " << eq.iterations << '\n';
}

void print_equilibrium(const EquilibriumR& eq, std::ostream& out) {
  out << "structure = R\n"
      << "y_star = " << num(eq.y_star) << '\n'
      << "e_star = " << num(eq.e_star) << '\n'
      << "b_star = " << num(eq.b_star) << '\n'
      << "pi_r = " << num(eq.pi_r) << '\n'
      << "pi_pc = " << num(eq.pi_pc) << '\n'
      << "pi_hq = " << num(eq.pi_hq) << '\n'
      << "fixed_wage = " << num(eq.fixed_wage) << '\n'
      << "lemma2_b_residual = " << num(eq.lemma2_b_residual) << '\n'
      << "boundary_b = " << (eq.boundary_b ? "true" : "false") << '\n'
      << "iterations = " << eq.iterations << '\n';
}

struct Common {
  std::string structure = "c";
  std::string config;
  std::vector<std::string> overrides;
};

void add_common(CLI::App* cmd, Common& c, bool need_structure = true) {
  auto* opt = cmd->add_option("--structure,-s", c.structure, "Operational structure: c or r");
  if (need_structure) opt->required();
  cmd->add_option("--config,-c", c.config, "Scenario file (INI)")->required();
  cmd->add_option("--override,-o", c.overrides, "section.key=value, applied after parsing");
}

template <typename Writer>
void emit(const std::string& path, std::ostream& out, Writer&& write) {
  if (path.empty() || path == "-") {
    write(out);
    return;
  }
  std::ofstream file(path, std::ios::binary);
  if (!file) fail(ErrorKind::IoError, "cannot open " + path + " for writing");
  write(file);
  if (!file) fail(ErrorKind::IoError, "failed writing " + path);
}

}  // namespace

int run_command(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Equilibria of tax-efficient supply chains under commissionaire (C) and "
               "limited-risk (R) structures"};
  app.name(args.empty() ? "taxchain" : std::filesystem::path(args.front()).filename().string());
  app.require_subcommand(1);

  Common solve_opts;
  auto* solve_cmd = app.add_subcommand("solve", "Solve one scenario and print the equilibrium");
  add_common(solve_cmd, solve_opts);

  Common sweep_opts;
  std::string sweep_param;
  double sweep_from = 0.0;
  double sweep_to = 0.0;
  int sweep_steps = 0;
  std::string sweep_out;
  int jobs = 1;
  auto* sweep_cmd = app.add_subcommand("sweep", "Solve along a parameter grid and write CSV");
  add_common(sweep_cmd, sweep_opts);
  sweep_cmd->add_option("--param", sweep_param, "tau0, tau, alpha, beta, k, eta, m, gamma0, reservation")
      ->required();
  sweep_cmd->add_option("--from", sweep_from)->required();
  sweep_cmd->add_option("--to", sweep_to)->required();
  sweep_cmd->add_option("--steps", sweep_steps)->required()->check(CLI::PositiveNumber);
  sweep_cmd->add_option("--out", sweep_out, "CSV path (default: stdout)");
  sweep_cmd->add_option("--jobs,-j", jobs, "Worker threads")->check(CLI::PositiveNumber);

  Common threshold_opts;
  threshold_opts.structure = "r";
  auto* threshold_cmd =
      app.add_subcommand("threshold", "Locate the tax difference where HQ profit turns");
  add_common(threshold_cmd, threshold_opts, false);

  Common boundary_opts;
  double alpha_from = 0.05;
  double alpha_to = 0.45;
  int alpha_steps = 9;
  std::string boundary_out;
  auto* boundary_cmd =
      app.add_subcommand("boundary", "Trace the markup/royalty dominance curve in (alpha, beta)");
  add_common(boundary_cmd, boundary_opts);
  boundary_cmd->add_option("--alpha-from", alpha_from);
  boundary_cmd->add_option("--alpha-to", alpha_to);
  boundary_cmd->add_option("--alpha-steps", alpha_steps)->check(CLI::PositiveNumber);
  boundary_cmd->add_option("--out", boundary_out, "CSV path (default: stdout)");
  boundary_cmd->add_option("--jobs,-j", jobs, "Worker threads")->check(CLI::PositiveNumber);

  std::string figure;
  std::string reproduce_out;
  std::string preset_dir = default_preset_dir().string();
  auto* reproduce_cmd = app.add_subcommand("reproduce", "Regenerate figure data from presets");
  reproduce_cmd->add_option("figure", figure, "fig4, fig5, fig6, fig7 or fig8")
      ->required()
      ->check(CLI::IsMember({"fig4", "fig5", "fig6", "fig7", "fig8"}));
  reproduce_cmd->add_option("--out", reproduce_out, "Output directory")->required();
  reproduce_cmd->add_option("--presets", preset_dir, "Directory holding the preset .ini files");
  reproduce_cmd->add_option("--jobs,-j", jobs, "Worker threads")->check(CLI::PositiveNumber);

  VerifyOptions verify_opts;
  auto* verify_cmd = app.add_subcommand("verify", "Run oracle-equivalence and invariant checks");
  verify_cmd->add_option("--count", verify_opts.count, "Random scenarios per structure")
      ->check(CLI::PositiveNumber);
  verify_cmd->add_option("--seed", verify_opts.seed, "First random seed");
  verify_cmd->add_flag("--quiet,-q", verify_opts.quiet, "Only print failures and the summary");

  std::vector<const char*> argv;
  argv.reserve(args.size() + 1);
  if (args.empty()) argv.push_back("taxchain");
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitFailure;
  }

  try {
    if (*solve_cmd) {
      const Scenario s = parse_config(solve_opts.config, solve_opts.overrides);
      if (parse_structure(solve_opts.structure) == Structure::Commissionaire) {
        print_equilibrium(solve_c(s), out);
      } else {
        print_equilibrium(solve_r(s), out);
      }
      return kExitOk;
    }
    if (*sweep_cmd) {
      const Scenario s = parse_config(sweep_opts.config, sweep_opts.overrides);
      const Structure structure = parse_structure(sweep_opts.structure);
      const std::vector<double> values = linear_grid(sweep_from, sweep_to, sweep_steps);
      const auto records = run_sweep(s, structure, parse_param(sweep_param), values, jobs);
      emit(sweep_out, out, [&](std::ostream& o) { write_csv(records, o); });
      int failed = 0;
      for (const auto& r : records) {
        if (!r.converged) {
          ++failed;
          err << "point " << sweep_param << '=' << num(r.param_value) << ": " << r.error << '\n';
        }
      }
      if (failed != 0) err << failed << " of " << records.size() << " points did not solve\n";
      return kExitOk;
    }
    if (*threshold_cmd) {
      const Scenario s = parse_config(threshold_opts.config, threshold_opts.overrides);
      const ThresholdResult t = dtau_turning_point(s, parse_structure(threshold_opts.structure));
      out << "metric = " << t.metric << '\n'
          << "location = " << num(t.location) << '\n'
          << "bracket = [" << num(t.lo) << ", " << num(t.hi) << "]\n"
          << "left_sign = " << t.left_sign << '\n'
          << "right_sign = " << t.right_sign << '\n';
      return kExitOk;
    }
    if (*boundary_cmd) {
      const Scenario s = parse_config(boundary_opts.config, boundary_opts.overrides);
      const std::vector<double> alphas = linear_grid(alpha_from, alpha_to, alpha_steps);
      const auto curve =
          dominance_boundary(s, parse_structure(boundary_opts.structure), alphas, jobs);
      emit(boundary_out, out, [&](std::ostream& o) { write_boundary_csv(curve, o); });
      bool any_root = false;
      for (const auto& p : curve) any_root = any_root || p.status == BoundaryStatus::Root;
      if (!any_root) {
        err << "no dominance crossing found on the alpha grid\n";
        return kExitDetection;
      }
      return kExitOk;
    }
    if (*reproduce_cmd) {
      for (const auto& path : reproduce_figure(figure, preset_dir, reproduce_out, jobs)) {
        out << path.string() << '\n';
      }
      return kExitOk;
    }
    if (*verify_cmd) {
      return run_verify(verify_opts, out) ? kExitOk : kExitFailure;
    }
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return exit_code_for(e.kind());
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitFailure;
  }
  return kExitFailure;
}

}  // namespace taxchain::cli
