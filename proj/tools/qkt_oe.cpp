// qkt_oe.cpp - command-line front end for the kicked-top experiments
//
// Exit codes: 0 success, 2 configuration error, 3 numeric failure.

#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "qkt/qkt.hpp"

int main(int argc, char** argv) {
  CLI::App app{"qkt-oe: observational-entropy experiments on the quantum kicked top"};
  app.require_subcommand(1);

  CLI::App* list_cmd = app.add_subcommand("list", "list available experiments");

  std::string experiment;
  std::string config_path;
  std::string out_dir = ".";
  std::string format;
  std::vector<std::string> set_args;
  CLI::App* run_cmd = app.add_subcommand("run", "run an experiment and write its tables");
  run_cmd->add_option("experiment", experiment, "experiment name (see 'list')")->required();
  run_cmd->add_option("--config", config_path, "flat key=value config file");
  run_cmd->add_option("--set", set_args, "override a config value (key=value), repeatable");
  run_cmd->add_option("--out", out_dir, "output directory (default: current)");
  run_cmd->add_option("--format", format, "output format: csv or json")
      ->check(CLI::IsMember({"csv", "json"}));

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (list_cmd->parsed()) {
      for (const auto& info : qkt::experiment_registry())
        std::cout << info.name << "\t" << info.description << "\n";
      return 0;
    }

    qkt::RunConfig cfg = qkt::load_run_config(experiment, config_path, set_args);
    if (!format.empty()) cfg.values["format"] = format;

    const auto tables = qkt::run_experiment(cfg, qkt::worker_count());
    const auto paths = qkt::write_outputs(tables, out_dir, qkt::output_format(cfg));
    for (const auto& path : paths) std::cout << path.string() << "\n";
    return 0;
  } catch (const qkt::ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 2;
  } catch (const qkt::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  }
}
