#include <cstdio>
#include <fstream>
#include <string>
#include <vector>

#include "cli/commands.hpp"
#include "taxchain/config.hpp"
#include "taxchain/statics.hpp"
#include "taxchain/sweep.hpp"

namespace taxchain::cli {

namespace {

struct Curve {
  double alpha;
  double beta;
};

struct FigurePlan {
  std::string preset;
  Structure structure;
  std::vector<Curve> curves;
  bool turning_points = false;
};

FigurePlan plan_for(const std::string& figure) {
  const std::vector<Curve> markups_c = {{0.1, 0.3}, {0.3, 0.3}, {0.8, 0.3}, {0.1, 0.5}, {0.1, 0.7}};
  const std::vector<Curve> standard = {{0.1, 0.3}, {0.3, 0.3}, {0.5, 0.3}, {0.1, 0.5}, {0.1, 0.7}};
  if (figure == "fig4") return {"fig4.ini", Structure::Commissionaire, markups_c};
  if (figure == "fig5") return {"fig5.ini", Structure::Commissionaire, standard};
  if (figure == "fig6") return {"fig6.ini", Structure::LimitedRisk, standard};
  if (figure == "fig7") return {"fig7.ini", Structure::LimitedRisk, standard, true};
  fail(ErrorKind::UsageError, "unknown figure " + figure);
}

std::string tag(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2f", v);
  return buf;
}

std::vector<std::filesystem::path> reproduce_sweeps(const FigurePlan& plan, const std::string& figure,
                                                    const std::filesystem::path& preset_dir,
                                                    const std::filesystem::path& out_dir, int jobs) {
  const Scenario base = parse_config(preset_dir / plan.preset);
  const std::vector<double> tau0s = linear_grid(0.30, 0.05, 26);
  const std::string st(to_string(plan.structure));
  std::vector<std::filesystem::path> written;
  for (const Curve& c : plan.curves) {
    Scenario s = base;
    s.alpha = c.alpha;
    s.beta = c.beta;
    validate(s);
    const auto records = run_sweep(s, plan.structure, Param::Tau0, tau0s, jobs);
    const auto path =
        out_dir / (figure + "_" + st + "_alpha_" + tag(c.alpha) + "_beta_" + tag(c.beta) + ".csv");
    write_csv(records, path);
    written.push_back(path);
  }
  if (plan.turning_points) {
    const auto path = out_dir / (figure + "_turning_points.csv");
    std::ofstream out(path, std::ios::binary);
    if (!out) fail(ErrorKind::IoError, "cannot open " + path.string() + " for writing");
    out << "alpha,beta,dtau,lo,hi,left_sign,right_sign,status\n";
    for (const Curve& c : plan.curves) {
      Scenario s = base;
      s.alpha = c.alpha;
      s.beta = c.beta;
      out << format_number(c.alpha) << ',' << format_number(c.beta) << ',';
      try {
        const ThresholdResult t = dtau_turning_point(s, plan.structure);
        out << format_number(t.location) << ',' << format_number(t.lo) << ','
            << format_number(t.hi) << ',' << t.left_sign << ',' << t.right_sign << ",ok\n";
      } catch (const Error& e) {
        out << ",,,,," << to_string(e.kind()) << '\n';
      }
    }
    if (!out) fail(ErrorKind::IoError, "failed writing " + path.string());
    written.push_back(path);
  }
  return written;
}

std::vector<std::filesystem::path> reproduce_dominance(const std::filesystem::path& preset_dir,
                                                       const std::filesystem::path& out_dir,
                                                       int jobs) {
  struct Run {
    const char* preset;
    Structure structure;
    std::vector<double> tau0s;
  };
  const std::vector<Run> runs = {{"fig8c.ini", Structure::Commissionaire, {0.21, 0.20, 0.19}},
                                 {"fig8r.ini", Structure::LimitedRisk, {0.30, 0.20, 0.10}}};
  const std::vector<double> alphas = linear_grid(0.05, 0.45, 9);
  std::vector<std::filesystem::path> written;
  for (const Run& run : runs) {
    const Scenario base = parse_config(preset_dir / run.preset);
    for (double tau0 : run.tau0s) {
      const Scenario s = with_param(base, Param::Tau0, tau0);
      const auto curve = dominance_boundary(s, run.structure, alphas, jobs);
      const auto path = out_dir / ("fig8_" + std::string(to_string(run.structure)) + "_tau0_" +
                                   tag(tau0) + ".csv");
      write_boundary_csv(curve, path);
      written.push_back(path);
    }
  }
  return written;
}

}  // namespace

std::vector<std::filesystem::path> reproduce_figure(const std::string& figure,
                                                    const std::filesystem::path& preset_dir,
                                                    const std::filesystem::path& out_dir, int jobs) {
  std::error_code ec;
  std::filesystem::create_directories(out_dir, ec);
  if (ec) fail(ErrorKind::IoError, "cannot create " + out_dir.string() + ": " + ec.message());
  if (figure == "fig8") return reproduce_dominance(preset_dir, out_dir, jobs);
  return reproduce_sweeps(plan_for(figure), figure, preset_dir, out_dir, jobs);
}

}  // namespace taxchain::cli
