#include <cstdint>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "holderlab/report.hpp"

int main(int argc, char** argv) {
  CLI::App app{"Run verification experiments on Hölder map constructions"};
  app.require_subcommand(1);

  holderlab::RunOptions opts;
  std::string config_path;
  std::uint64_t seed = 0;
  holderlab::Index breadth = 0;
  std::string out_dir;

  auto* run = app.add_subcommand("run", "run the checks of an experiment config");
  run->add_option("config", config_path, "experiment config (JSON)")->required();
  run->add_flag("--strict", opts.strict, "report-only rows that miss their claim fail the run");
  run->add_option("--out", out_dir, "directory for the report and summary files");
  auto* seed_opt = run->add_option("--seed", seed, "master seed; every check reseeds from it");
  auto* breadth_opt =
      run->add_option("--breadth", breadth, "sampling breadth")->check(CLI::PositiveNumber);
  run->add_option("--threads", opts.threads, "worker threads per check (0 = auto)");

  app.add_subcommand("list", "list every construction");

  std::string name;
  auto* describe = app.add_subcommand("describe", "show one construction");
  describe->add_option("name", name, "construction name")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : holderlab::exit_code::config_error;
  }

  if (*run) {
    if (*seed_opt) opts.seed = seed;
    if (*breadth_opt) opts.breadth = breadth;
    if (!out_dir.empty()) opts.out_dir = out_dir;
    const auto result = holderlab::run_config_file(config_path, opts, std::cout, std::cerr);
    if (result.report) {
      std::cerr << "wrote " << result.report_path.string() << " and "
                << result.summary_path.string() << '\n';
    }
    return result.exit_code;
  }
  if (app.got_subcommand("list")) {
    std::cout << holderlab::catalog_listing();
    return 0;
  }
  try {
    std::cout << holderlab::describe_construction(name);
  } catch (const holderlab::Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return holderlab::exit_code_for(e.code());
  }
  return 0;
}
