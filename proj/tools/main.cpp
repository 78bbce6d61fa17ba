#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "sbsfield/engine.hpp"

namespace {

struct CommonArgs {
  std::string config_path;
  std::string preset;
  std::string out_path;
  int threads = 1;
  double tolerance_scale = 1.0;
};

void add_common(CLI::App* cmd, CommonArgs* args) {
  cmd->add_option("--config", args->config_path, "Path to a JSON run configuration");
  cmd->add_option("--preset", args->preset, "Built-in configuration: fig2-a or fig2-b");
  cmd->add_option("--threads", args->threads, "Worker threads for sweep rows")
      ->check(CLI::PositiveNumber);
  cmd->add_option("--tolerance-scale", args->tolerance_scale,
                  "Multiplier on every oracle-check tolerance")
      ->check(CLI::PositiveNumber);
  cmd->add_option("--out", args->out_path,
                  "Output file (stdout when omitted; relative paths honor "
                  "SBSFIELD_OUT_DIR)");
}

sbsfield::RunConfig load_config(const CommonArgs& args) {
  if (!args.preset.empty() && !args.config_path.empty())
    throw sbsfield::ConfigError("give --config or --preset, not both");
  if (!args.preset.empty()) return sbsfield::preset_config(args.preset);
  if (args.config_path.empty())
    throw sbsfield::ConfigError("one of --config or --preset is required");
  std::ifstream in(args.config_path);
  if (!in)
    throw sbsfield::ConfigError("cannot open config file '" + args.config_path + "'");
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return sbsfield::parse_config(buffer.str());
}

void emit(const CommonArgs& args, const std::string& payload) {
  if (args.out_path.empty()) {
    std::cout << payload;
    return;
  }
  std::filesystem::path path(args.out_path);
  if (path.is_relative()) {
    if (const char* dir = std::getenv("SBSFIELD_OUT_DIR")) path = dir / path;
  }
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary);
  if (!out)
    throw sbsfield::ConfigError("cannot open output file '" + path.string() + "'");
  out << payload;
}

void print_warnings(const sbsfield::RunConfig& config) {
  if (config.validity_warning())
    std::cerr << "WARNING: time grid extends past the moving-dipole validity "
                 "horizon cutoff*tau_dip = "
              << sbsfield::dipole_validity_time(config.scenario) << "\n";
  if (config.scenario.low_thermal_warning())
    std::cerr << "WARNING: cutoff_over_thermal < 10; the thermal closed forms "
                 "assume a cutoff far above the thermal scale\n";
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "Decoherence and broadcast-structure diagnostics for a slow charge in a "
      "thermal electromagnetic field (all quantities in cutoff units)"};
  app.require_subcommand(1);

  CommonArgs sweep_args, table_args, oracle_args, sbs_args;
  CLI::App* sweep = app.add_subcommand("sweep", "Time sweep of damping and fidelity (CSV)");
  add_common(sweep, &sweep_args);
  CLI::App* table =
      app.add_subcommand("regime-table", "Three-regime summary table (text + JSON)");
  add_common(table, &table_args);
  bool corrupt = false;
  CLI::App* oracle = app.add_subcommand("oracle-check", "Numerical self-check suite");
  add_common(oracle, &oracle_args);
  oracle
      ->add_flag("--corrupt-tanh-to-coth", corrupt,
                 "Test fixture: swap the fidelity thermal structure; must FAIL")
      ->group("");
  CLI::App* sbs = app.add_subcommand("sbs-report", "Broadcast-structure report (JSON)");
  add_common(sbs, &sbs_args);

  CLI11_PARSE(app, argc, argv);

  try {
    if (sweep->parsed()) {
      const sbsfield::RunConfig config = load_config(sweep_args);
      print_warnings(config);
      sbsfield::EngineOptions opt{sweep_args.threads, sweep_args.tolerance_scale};
      emit(sweep_args, sbsfield::run_sweep_csv(config, opt));
    } else if (table->parsed()) {
      const sbsfield::RunConfig config = load_config(table_args);
      std::cout << sbsfield::run_regime_table_text(config);
      if (!table_args.out_path.empty())
        emit(table_args, sbsfield::run_regime_table_json(config));
    } else if (oracle->parsed()) {
      const sbsfield::RunConfig config = load_config(oracle_args);
      sbsfield::EngineOptions opt{oracle_args.threads, oracle_args.tolerance_scale};
      const sbsfield::OracleCheckResult result =
          sbsfield::run_oracle_check(config, opt, corrupt);
      emit(oracle_args, result.report);
      if (!oracle_args.out_path.empty()) std::cout << result.report;
      if (!result.passed) return 3;
    } else if (sbs->parsed()) {
      const sbsfield::RunConfig config = load_config(sbs_args);
      print_warnings(config);
      emit(sbs_args, sbsfield::run_sbs_report_json(config));
    }
  } catch (const sbsfield::ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 1;
  } catch (const std::invalid_argument& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "numerical failure: " << e.what() << "\n";
    return 2;
  }
  return 0;
}
