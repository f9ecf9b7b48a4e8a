#include <cstdio>
#include <fstream>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "burgers/common.hpp"
#include "burgers/scenario.hpp"

namespace {

int parse_grid_flag(const std::string& grid, std::size_t& nt, std::size_t& nx) {
  auto x = grid.find('x');
  if (x == std::string::npos) x = grid.find('X');
  if (x == std::string::npos) return 1;
  try {
    nt = std::stoul(grid.substr(0, x));
    nx = std::stoul(grid.substr(x + 1));
  } catch (...) {
    return 1;
  }
  return (nt >= 2 && nx >= 2) ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"burgerslab: exact weak solutions of Burgers' equation with "
               "controlled entropy production, and the estimates they satisfy"};
  app.require_subcommand(1);
  app.fallthrough();

  std::string grid_flag, out_dir = "out";
  int jobs_flag = 0;
  long seed = 0;  // reserved; no randomized component
  app.add_option("--grid", grid_flag, "grid as NTxNX (default 256x256)");
  app.add_option("--out", out_dir, "output directory");
  app.add_option("--seed", seed, "reserved");
  app.add_option("--jobs", jobs_flag, "worker threads");

  auto* run_cmd = app.add_subcommand("run", "run a scenario config or built-in id");
  std::string config_path;
  run_cmd->add_option("config", config_path, "config file path or built-in id")
      ->required();

  auto* catalog_cmd = app.add_subcommand("catalog", "list built-in scenarios");

  auto* report_cmd = app.add_subcommand("report", "re-render a summary from JSON lines");
  std::string report_dir;
  report_cmd->add_option("dir", report_dir, "directory with per-scenario outputs")
      ->required();

  CLI11_PARSE(app, argc, argv);

  if (jobs_flag > 0) burgers::set_jobs(jobs_flag);

  try {
    if (catalog_cmd->parsed()) {
      std::cout << burgers::catalog_listing();
      return 0;
    }
    if (report_cmd->parsed()) {
      std::cout << burgers::summarize_directory(report_dir);
      return 0;
    }
    if (run_cmd->parsed()) {
      burgers::ScenarioConfig cfg;
      if (const auto* builtin = burgers::find_builtin(config_path)) {
        cfg = *builtin;
      } else {
        std::ifstream is(config_path);
        if (!is) {
          std::cerr << "error: cannot open config or unknown built-in id: "
                    << config_path << "\n";
          return 1;
        }
        cfg = burgers::parse_config(is, config_path);
      }
      if (!grid_flag.empty() && parse_grid_flag(grid_flag, cfg.nt, cfg.nx) != 0) {
        std::cerr << "error: bad --grid value '" << grid_flag << "'\n";
        return 1;
      }
      burgers::ScenarioResult res = burgers::run_and_write(cfg, out_dir);
      std::cout << burgers::render_summary({res});
      std::cout << (res.all_pass ? "all checks passed\n" : "verifier failure\n");
      return res.all_pass ? 0 : 2;
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 1;
}
