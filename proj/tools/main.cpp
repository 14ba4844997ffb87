#include <cstdio>
#include <string>

#include <CLI11.hpp>

#include "twowell/runner.hpp"
#include "twowell/version.hpp"

namespace {

void print_diagnostics(const std::vector<twowell::Diagnostic>& diags) {
  for (const auto& d : diags) {
    std::fprintf(stderr, "config error: %s: %s\n", d.field.c_str(),
                 d.message.c_str());
  }
}

int run_command(const std::string& config_path, const std::string& format,
                int threads) {
  twowell::ConfigParseResult parsed = twowell::load_config(config_path);
  if (!parsed.config) {
    print_diagnostics(parsed.diagnostics);
    return 2;
  }
  twowell::RunConfig config = *parsed.config;
  if (format == "csv") config.format = twowell::OutputFormat::csv;
  if (format == "json") config.format = twowell::OutputFormat::json;
  if (threads >= 0) config.threads = threads;
  const twowell::RunOutcome outcome = twowell::run(config);
  if (outcome.exit_code == 0) {
    std::printf("%s\n", outcome.message.c_str());
  } else {
    std::fprintf(stderr, "%s\n", outcome.message.c_str());
  }
  return outcome.exit_code;
}

int validate_command(const std::string& config_path) {
  twowell::ConfigParseResult parsed = twowell::load_config(config_path);
  if (!parsed.config) {
    print_diagnostics(parsed.diagnostics);
    return 2;
  }
  std::printf("ok\n");
  return 0;
}

int preset_command(const std::string& name, const std::string& out_path) {
  twowell::RunConfig config;
  try {
    config = twowell::preset(name);
  } catch (const std::invalid_argument& e) {
    std::fprintf(stderr, "%s\n", e.what());
    return 2;
  }
  const std::string text = twowell::config_to_json(config);
  if (out_path.empty()) {
    std::fputs(text.c_str(), stdout);
    return 0;
  }
  std::FILE* f = std::fopen(out_path.c_str(), "wb");
  if (!f) {
    std::fprintf(stderr, "cannot write '%s'\n", out_path.c_str());
    return 2;
  }
  std::fputs(text.c_str(), f);
  std::fclose(f);
  std::printf("wrote %s\n", out_path.c_str());
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Two-well condensate entanglement sweeps"};
  app.set_version_flag("--version", std::string(twowell::kToolName) + " " +
                                        std::string(twowell::kVersion));
  app.require_subcommand(1);

  std::string config_path;
  std::string format;
  int threads = -1;
  CLI::App* run_cmd =
      app.add_subcommand("run", "Execute the sweep described by a JSON config");
  run_cmd->add_option("config", config_path, "JSON config file")->required();
  run_cmd->add_option("--format", format, "Override output format")
      ->check(CLI::IsMember({"csv", "json"}));
  run_cmd->add_option("--threads", threads, "Override worker thread count")
      ->check(CLI::NonNegativeNumber);

  std::string validate_path;
  CLI::App* validate_cmd =
      app.add_subcommand("validate", "Check a JSON config without running it");
  validate_cmd->add_option("config", validate_path, "JSON config file")
      ->required();

  std::string preset_name;
  std::string preset_out;
  CLI::App* preset_cmd =
      app.add_subcommand("preset", "Print a ready-made config (fig2/fig3/fig4)");
  preset_cmd->add_option("name", preset_name, "Preset name")->required();
  preset_cmd->add_option("--out", preset_out, "Write the config to a file");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  if (run_cmd->parsed()) return run_command(config_path, format, threads);
  if (validate_cmd->parsed()) return validate_command(validate_path);
  if (preset_cmd->parsed()) return preset_command(preset_name, preset_out);
  return 2;
}
