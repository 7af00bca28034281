#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "curvesolve/runner.hpp"

int main(int argc, char** argv) {
  CLI::App app{"closed curves of prescribed geodesic curvature on conformal spheres"};
  app.require_subcommand(1);

  std::string config_path;
  std::string run_dir;
  std::string format;
  std::optional<std::string> out_dir;
  int threads = 1;

  auto* solve = app.add_subcommand("solve", "run a continuation from a config file");
  solve->add_option("config", config_path, "path to the JSON config")->required();
  solve->add_option("--threads", threads, "number of worker threads")
      ->check(CLI::PositiveNumber);
  solve->add_option("--out", out_dir, "override the output directory");

  auto* exp = app.add_subcommand("export", "export result tables from a run directory");
  exp->add_option("run-dir", run_dir, "run directory containing result.json")->required();
  exp->add_option("--format", format, "curve-table, diagnostics-table, or plot-bundle")
      ->required();
  exp->add_option("--out", out_dir, "directory to write exported files into");

  CLI11_PARSE(app, argc, argv);

  try {
    if (solve->parsed()) {
      const auto cfg = curvesolve::parse_config_file(config_path);
      const auto outcome = curvesolve::run(cfg, std::cout, out_dir, threads);
      if (!outcome.run_dir.empty()) std::cout << "run dir: " << outcome.run_dir << "\n";
      return outcome.exit_code;
    }
    for (const auto& f : curvesolve::export_run(run_dir, format, out_dir)) {
      std::cout << f << "\n";
    }
    return 0;
  } catch (const curvesolve::ConfigError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return curvesolve::kExitConfigError;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return curvesolve::kExitConfigError;
  }
}
