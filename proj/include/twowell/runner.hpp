#pragma once

#include <cmath>
#include <optional>
#include <string>
#include <vector>

#include "twowell/adiabatic.hpp"
#include "twowell/kerr.hpp"

namespace twowell {

enum class Scenario { adiabatic, dynamic, oracle_check };
enum class OutputFormat { csv, json };

// A grid keeps both its resolved values and the way it was requested, so the
// manifest can echo the request alongside what actually ran.
struct Grid {
  std::vector<double> values;
  std::string requested;  // e.g. "min=-10 max=10 step=0.1"
};

struct AdiabaticConfig {
  int atom_count = 100;
  Grid ng_over_kappa;
  std::vector<double> temperatures_nK{0.0, 50.0, 80.0};
  double kappa_scale_nK = 50.0;
};

struct DynamicConfig {
  std::optional<Complex> alpha;  // empty -> sqrt(atom_number_ref/2)
  GRatios g_ratios;
  double atom_number_ref = 200.0;
  double phi = 1.5707963267948966;
  Grid tau;
  bool rotate_frame = true;

  Complex resolved_alpha() const {
    return alpha ? *alpha : Complex(std::sqrt(atom_number_ref / 2.0), 0.0);
  }
};

struct OracleCheckConfig {
  std::vector<double> alpha_sq{1.0, 4.0, 9.0, 16.0};
  Grid tau;
  std::vector<std::string> ratio_sets{"rb", "no-cross"};
  int cutoff = 0;  // 0 = automatic
  double tolerance = 1e-8;
  double phi = 1.5707963267948966;
};

struct RunConfig {
  Scenario scenario = Scenario::adiabatic;
  AdiabaticConfig adiabatic;
  DynamicConfig dynamic;
  OracleCheckConfig oracle;
  std::string output_path = "results.csv";
  OutputFormat format = OutputFormat::csv;
  int threads = 1;  // 0 = hardware concurrency
};

struct Diagnostic {
  std::string field;
  std::string message;
};

struct ConfigParseResult {
  std::optional<RunConfig> config;  // present only when diagnostics is empty
  std::vector<Diagnostic> diagnostics;
};

ConfigParseResult parse_config_text(const std::string& text);
ConfigParseResult load_config(const std::string& path);

// Re-checks an already-built config; run() calls this first, so a config
// that validates cleanly can only fail numerically afterwards.
std::vector<Diagnostic> validate_config(const RunConfig& config);

// fig2: adiabatic reproduction sweep.  fig3: dynamic sweep with the 87Rb
// scattering ratios.  fig4: fig3 with the cross coupling switched off.
RunConfig preset(const std::string& name);
std::string config_to_json(const RunConfig& config);

struct RunOutcome {
  int exit_code = 0;  // 0 ok, 2 config, 3 numeric
  std::string message;
  std::size_t rows_written = 0;
};

// Writes the result table to config.output_path and a manifest with every
// resolved parameter next to it (path + ".manifest.json").
RunOutcome run(const RunConfig& config);

// The interaction-ratio sets accepted by oracle-check configs.
GRatios named_ratio_set(const std::string& name);

}  // namespace twowell
