#include "twowell/runner.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "twowell/oracle.hpp"
#include "twowell/version.hpp"

namespace twowell {

namespace {

using nlohmann::ordered_json;

constexpr double kPi = 3.14159265358979323846;
// 87Rb scattering length ratios a22/a11 and a12/a11 for a11 = 100.4 a0,
// a22 = 95.5 a0, a12 = 80.8 a0.
constexpr double kRbG22 = 95.5 / 100.4;
constexpr double kRbG12 = 80.8 / 100.4;

std::string format_double(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

struct Cell {
  enum class Kind { number, text, undefined } kind = Kind::undefined;
  double number = 0.0;
  std::string text;

  static Cell num(double v) { return {Kind::number, v, {}}; }
  static Cell str(std::string s) { return {Kind::text, 0.0, std::move(s)}; }
  static Cell undef() { return {}; }
  static Cell opt(const std::optional<double>& v) {
    return v ? num(*v) : undef();
  }
};

struct Table {
  std::vector<std::string> columns;
  std::vector<std::vector<Cell>> rows;
};

std::string render_csv(const Table& table) {
  std::string out;
  for (std::size_t c = 0; c < table.columns.size(); ++c) {
    if (c) out += ',';
    out += table.columns[c];
  }
  out += '\n';
  for (const auto& row : table.rows) {
    for (std::size_t c = 0; c < row.size(); ++c) {
      if (c) out += ',';
      switch (row[c].kind) {
        case Cell::Kind::number:
          out += format_double(row[c].number);
          break;
        case Cell::Kind::text:
          out += row[c].text;
          break;
        case Cell::Kind::undefined:
          out += "undefined";
          break;
      }
    }
    out += '\n';
  }
  return out;
}

std::string render_json(const Table& table) {
  ordered_json doc;
  doc["columns"] = table.columns;
  ordered_json rows = ordered_json::array();
  for (const auto& row : table.rows) {
    ordered_json jrow = ordered_json::array();
    for (const Cell& cell : row) {
      switch (cell.kind) {
        case Cell::Kind::number:
          jrow.push_back(cell.number);
          break;
        case Cell::Kind::text:
          jrow.push_back(cell.text);
          break;
        case Cell::Kind::undefined:
          jrow.push_back(nullptr);
          break;
      }
    }
    rows.push_back(std::move(jrow));
  }
  doc["rows"] = std::move(rows);
  return doc.dump(2) + "\n";
}

// ---- config parsing -------------------------------------------------------

struct Parser {
  std::vector<Diagnostic>& diags;

  void error(const std::string& field, const std::string& message) {
    diags.push_back({field, message});
  }

  bool require_object(const ordered_json& j, const std::string& field) {
    if (!j.is_object()) {
      error(field, "expected an object");
      return false;
    }
    return true;
  }

  double number(const ordered_json& obj, const std::string& field,
                const std::string& key, double fallback) {
    if (!obj.contains(key)) return fallback;
    if (!obj[key].is_number()) {
      error(field + "." + key, "expected a number");
      return fallback;
    }
    return obj[key].get<double>();
  }

  int integer(const ordered_json& obj, const std::string& field,
              const std::string& key, int fallback) {
    if (!obj.contains(key)) return fallback;
    if (!obj[key].is_number_integer()) {
      error(field + "." + key, "expected an integer");
      return fallback;
    }
    return obj[key].get<int>();
  }

  bool boolean(const ordered_json& obj, const std::string& field,
               const std::string& key, bool fallback) {
    if (!obj.contains(key)) return fallback;
    if (!obj[key].is_boolean()) {
      error(field + "." + key, "expected a boolean");
      return fallback;
    }
    return obj[key].get<bool>();
  }

  std::string text(const ordered_json& obj, const std::string& field,
                   const std::string& key, const std::string& fallback) {
    if (!obj.contains(key)) return fallback;
    if (!obj[key].is_string()) {
      error(field + "." + key, "expected a string");
      return fallback;
    }
    return obj[key].get<std::string>();
  }

  std::vector<double> number_list(const ordered_json& obj,
                                  const std::string& field,
                                  const std::string& key,
                                  std::vector<double> fallback) {
    if (!obj.contains(key)) return fallback;
    if (!obj[key].is_array() || obj[key].empty()) {
      error(field + "." + key, "expected a non-empty array of numbers");
      return fallback;
    }
    std::vector<double> out;
    for (const auto& v : obj[key]) {
      if (!v.is_number()) {
        error(field + "." + key, "expected a non-empty array of numbers");
        return fallback;
      }
      out.push_back(v.get<double>());
    }
    return out;
  }

  // Accepts {"values": [...]}, {"min","max","step"}, {"min","max","points"},
  // or a bare array.
  Grid grid(const ordered_json& obj, const std::string& field,
            const std::string& key, Grid fallback) {
    if (!obj.contains(key)) return fallback;
    const ordered_json& g = obj[key];
    const std::string path = field + "." + key;
    Grid out;
    if (g.is_array()) {
      out.values = number_list(obj, field, key, fallback.values);
      out.requested = "explicit values";
      return out;
    }
    if (!g.is_object()) {
      error(path, "expected an array or a grid object");
      return fallback;
    }
    if (g.contains("values")) {
      out.values = number_list(g, path, "values", fallback.values);
      out.requested = "explicit values";
      return out;
    }
    const double min = number(g, path, "min", 0.0);
    const double max = number(g, path, "max", 0.0);
    if (!g.contains("min") || !g.contains("max")) {
      error(path, "grid object needs min and max (or values)");
      return fallback;
    }
    if (max < min) {
      error(path, "max must be >= min");
      return fallback;
    }
    if (g.contains("step") && g.contains("points")) {
      error(path, "give step or points, not both");
      return fallback;
    }
    if (g.contains("step")) {
      const double step = number(g, path, "step", 0.0);
      if (!(step > 0.0)) {
        error(path + ".step", "step must be positive");
        return fallback;
      }
      const std::size_t count =
          std::size_t(std::floor((max - min) / step + 1e-9)) + 1;
      if (count > 1000000) {
        error(path, "grid too large (over 1e6 points)");
        return fallback;
      }
      for (std::size_t i = 0; i < count; ++i) out.values.push_back(min + double(i) * step);
      out.requested = "min=" + format_double(min) + " max=" + format_double(max) +
                      " step=" + format_double(step);
      return out;
    }
    if (g.contains("points")) {
      const int points = integer(g, path, "points", 0);
      if (points < 1) {
        error(path + ".points", "points must be >= 1");
        return fallback;
      }
      if (points == 1) {
        out.values.push_back(min);
      } else {
        for (int i = 0; i < points; ++i) {
          out.values.push_back(min + (max - min) * double(i) / double(points - 1));
        }
      }
      out.requested = "min=" + format_double(min) + " max=" + format_double(max) +
                      " points=" + std::to_string(points);
      return out;
    }
    error(path, "grid object needs step, points, or values");
    return fallback;
  }
};

Grid default_tau_grid() {
  Grid g;
  for (int i = 0; i < 501; ++i) g.values.push_back(0.5 * double(i) / 500.0);
  g.requested = "min=0 max=0.5 points=501 (default)";
  return g;
}

Grid default_oracle_tau_grid() {
  Grid g;
  for (int i = 1; i <= 20; ++i) g.values.push_back(0.25 * double(i));
  g.requested = "min=0.25 max=5 points=20 (default)";
  return g;
}

Grid default_ng_grid() {
  Grid g;
  for (int i = 0; i <= 200; ++i) g.values.push_back(-10.0 + 0.1 * double(i));
  g.requested = "min=-10 max=10 step=0.1 (default)";
  return g;
}

}  // namespace

GRatios named_ratio_set(const std::string& name) {
  if (name == "rb") return GRatios{kRbG22, kRbG12};
  if (name == "no-cross") return GRatios{kRbG22, 0.0};
  throw std::invalid_argument("unknown ratio set '" + name +
                              "' (expected rb or no-cross)");
}

ConfigParseResult parse_config_text(const std::string& text) {
  ConfigParseResult result;
  ordered_json doc;
  try {
    doc = ordered_json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    result.diagnostics.push_back({"<root>", e.what()});
    return result;
  }
  Parser p{result.diagnostics};
  if (!p.require_object(doc, "<root>")) return result;

  RunConfig config;
  const std::string scenario = p.text(doc, "<root>", "scenario", "");
  int scenario_blocks = 0;
  for (const char* key : {"adiabatic", "dynamic", "oracle_check"}) {
    if (doc.contains(key)) ++scenario_blocks;
  }
  if (scenario == "adiabatic") {
    config.scenario = Scenario::adiabatic;
  } else if (scenario == "dynamic") {
    config.scenario = Scenario::dynamic;
  } else if (scenario == "oracle-check") {
    config.scenario = Scenario::oracle_check;
  } else {
    p.error("scenario",
            "expected one of adiabatic, dynamic, oracle-check; got '" +
                scenario + "'");
  }
  if (scenario_blocks > 1) {
    p.error("<root>", "exactly one scenario block may be present");
  }

  if (config.scenario == Scenario::adiabatic && doc.contains("adiabatic")) {
    const auto& a = doc["adiabatic"];
    if (p.require_object(a, "adiabatic")) {
      config.adiabatic.atom_count =
          p.integer(a, "adiabatic", "atom_count", config.adiabatic.atom_count);
      config.adiabatic.ng_over_kappa =
          p.grid(a, "adiabatic", "ng_over_kappa", default_ng_grid());
      config.adiabatic.temperatures_nK =
          p.number_list(a, "adiabatic", "temperatures_nK",
                        config.adiabatic.temperatures_nK);
      config.adiabatic.kappa_scale_nK = p.number(
          a, "adiabatic", "kappa_scale_nK", config.adiabatic.kappa_scale_nK);
    }
  } else if (config.scenario == Scenario::adiabatic) {
    config.adiabatic.ng_over_kappa = default_ng_grid();
  }

  if (config.scenario == Scenario::dynamic && doc.contains("dynamic")) {
    const auto& d = doc["dynamic"];
    if (p.require_object(d, "dynamic")) {
      config.dynamic.atom_number_ref = p.number(
          d, "dynamic", "atom_number_ref", config.dynamic.atom_number_ref);
      if (d.contains("alpha")) {
        const auto& a = d["alpha"];
        if (a.is_number()) {
          config.dynamic.alpha = Complex(a.get<double>(), 0.0);
        } else if (a.is_object() && a.contains("re")) {
          config.dynamic.alpha =
              Complex(p.number(a, "dynamic.alpha", "re", 0.0),
                      p.number(a, "dynamic.alpha", "im", 0.0));
        } else {
          p.error("dynamic.alpha", "expected a number or {re, im}");
        }
      }
      if (d.contains("g_ratios")) {
        const auto& g = d["g_ratios"];
        if (g.is_string()) {
          try {
            config.dynamic.g_ratios = named_ratio_set(g.get<std::string>());
          } catch (const std::invalid_argument& e) {
            p.error("dynamic.g_ratios", e.what());
          }
        } else if (p.require_object(g, "dynamic.g_ratios")) {
          config.dynamic.g_ratios.g22 =
              p.number(g, "dynamic.g_ratios", "g22", 1.0);
          config.dynamic.g_ratios.g12 =
              p.number(g, "dynamic.g_ratios", "g12", 0.0);
        }
      }
      config.dynamic.phi = p.number(d, "dynamic", "phi", config.dynamic.phi);
      config.dynamic.tau = p.grid(d, "dynamic", "tau", default_tau_grid());
      config.dynamic.rotate_frame =
          p.boolean(d, "dynamic", "rotate_frame", true);
    }
  } else if (config.scenario == Scenario::dynamic) {
    config.dynamic.tau = default_tau_grid();
  }

  if (config.scenario == Scenario::oracle_check && doc.contains("oracle_check")) {
    const auto& o = doc["oracle_check"];
    if (p.require_object(o, "oracle_check")) {
      config.oracle.alpha_sq = p.number_list(o, "oracle_check", "alpha_sq",
                                             config.oracle.alpha_sq);
      config.oracle.tau =
          p.grid(o, "oracle_check", "tau", default_oracle_tau_grid());
      if (o.contains("ratio_sets")) {
        config.oracle.ratio_sets.clear();
        if (!o["ratio_sets"].is_array()) {
          p.error("oracle_check.ratio_sets", "expected an array of names");
        } else {
          for (const auto& r : o["ratio_sets"]) {
            if (!r.is_string()) {
              p.error("oracle_check.ratio_sets", "expected an array of names");
              break;
            }
            config.oracle.ratio_sets.push_back(r.get<std::string>());
          }
        }
      }
      config.oracle.cutoff =
          p.integer(o, "oracle_check", "cutoff", config.oracle.cutoff);
      config.oracle.tolerance =
          p.number(o, "oracle_check", "tolerance", config.oracle.tolerance);
      config.oracle.phi = p.number(o, "oracle_check", "phi", config.oracle.phi);
    }
  } else if (config.scenario == Scenario::oracle_check) {
    config.oracle.tau = default_oracle_tau_grid();
  }

  if (doc.contains("output")) {
    const auto& o = doc["output"];
    if (p.require_object(o, "output")) {
      config.output_path =
          p.text(o, "output", "path", config.output_path);
      const std::string fmt = p.text(o, "output", "format", "csv");
      if (fmt == "csv") {
        config.format = OutputFormat::csv;
      } else if (fmt == "json") {
        config.format = OutputFormat::json;
      } else {
        p.error("output.format", "expected csv or json, got '" + fmt + "'");
      }
    }
  }
  config.threads = p.integer(doc, "<root>", "threads", config.threads);

  if (!result.diagnostics.empty()) return result;
  for (Diagnostic& d : validate_config(config)) {
    result.diagnostics.push_back(std::move(d));
  }
  if (result.diagnostics.empty()) result.config = std::move(config);
  return result;
}

ConfigParseResult load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) {
    ConfigParseResult result;
    result.diagnostics.push_back({"<file>", "cannot open '" + path + "'"});
    return result;
  }
  std::ostringstream text;
  text << in.rdbuf();
  return parse_config_text(text.str());
}

std::vector<Diagnostic> validate_config(const RunConfig& config) {
  std::vector<Diagnostic> diags;
  auto check = [&](bool ok, const std::string& field, const std::string& msg) {
    if (!ok) diags.push_back({field, msg});
  };
  check(config.threads >= 0, "threads", "must be >= 0 (0 = auto)");
  switch (config.scenario) {
    case Scenario::adiabatic: {
      const auto& a = config.adiabatic;
      check(a.atom_count >= 1, "adiabatic.atom_count", "must be >= 1");
      check(a.atom_count <= 5000, "adiabatic.atom_count",
            "must be <= 5000 (dense eigensolve)");
      check(!a.ng_over_kappa.values.empty(), "adiabatic.ng_over_kappa",
            "grid must be non-empty");
      for (double v : a.ng_over_kappa.values) {
        if (!std::isfinite(v)) {
          diags.push_back({"adiabatic.ng_over_kappa", "non-finite grid value"});
          break;
        }
      }
      check(!a.temperatures_nK.empty(), "adiabatic.temperatures_nK",
            "must be non-empty");
      for (double t : a.temperatures_nK) {
        if (!(t >= 0.0) || !std::isfinite(t)) {
          diags.push_back(
              {"adiabatic.temperatures_nK", "temperatures must be >= 0"});
          break;
        }
      }
      check(a.kappa_scale_nK > 0.0, "adiabatic.kappa_scale_nK",
            "must be positive");
      break;
    }
    case Scenario::dynamic: {
      const auto& d = config.dynamic;
      check(d.atom_number_ref > 0.0 && std::isfinite(d.atom_number_ref),
            "dynamic.atom_number_ref", "must be positive");
      const double nbar = std::norm(d.resolved_alpha());
      check(std::isfinite(nbar) && nbar <= 1e6, "dynamic.alpha",
            "|alpha|^2 must be finite and <= 1e6");
      check(std::isfinite(d.g_ratios.g22) && std::isfinite(d.g_ratios.g12),
            "dynamic.g_ratios", "ratios must be finite");
      check(d.phi >= 0.0 && d.phi < 2.0 * kPi, "dynamic.phi",
            "must lie in [0, 2*pi)");
      check(!d.tau.values.empty(), "dynamic.tau", "grid must be non-empty");
      for (double t : d.tau.values) {
        if (!std::isfinite(t)) {
          diags.push_back({"dynamic.tau", "non-finite grid value"});
          break;
        }
      }
      break;
    }
    case Scenario::oracle_check: {
      const auto& o = config.oracle;
      check(!o.alpha_sq.empty(), "oracle_check.alpha_sq", "must be non-empty");
      for (double a2 : o.alpha_sq) {
        if (!(a2 > 0.0) || a2 > 25.0) {
          diags.push_back({"oracle_check.alpha_sq",
                           "each |alpha|^2 must lie in (0, 25]"});
          break;
        }
      }
      check(!o.tau.values.empty(), "oracle_check.tau", "grid must be non-empty");
      check(o.tolerance > 0.0, "oracle_check.tolerance", "must be positive");
      check(o.cutoff >= 0, "oracle_check.cutoff", "must be >= 0 (0 = auto)");
      check(o.phi >= 0.0 && o.phi < 2.0 * kPi, "oracle_check.phi",
            "must lie in [0, 2*pi)");
      for (const std::string& name : o.ratio_sets) {
        try {
          named_ratio_set(name);
        } catch (const std::invalid_argument& e) {
          diags.push_back({"oracle_check.ratio_sets", e.what()});
        }
      }
      break;
    }
  }
  return diags;
}

RunConfig preset(const std::string& name) {
  RunConfig config;
  if (name == "fig2") {
    config.scenario = Scenario::adiabatic;
    config.adiabatic.atom_count = 100;
    config.adiabatic.ng_over_kappa = default_ng_grid();
    config.adiabatic.temperatures_nK = {0.0, 50.0, 80.0};
    config.adiabatic.kappa_scale_nK = 50.0;
    config.output_path = "fig2.csv";
    return config;
  }
  if (name == "fig3" || name == "fig4") {
    config.scenario = Scenario::dynamic;
    config.dynamic.atom_number_ref = 200.0;
    config.dynamic.g_ratios = named_ratio_set(name == "fig3" ? "rb" : "no-cross");
    config.dynamic.phi = 0.5 * kPi;
    config.dynamic.tau = default_tau_grid();
    config.output_path = name + ".csv";
    return config;
  }
  throw std::invalid_argument("unknown preset '" + name +
                              "' (expected fig2, fig3, fig4)");
}

namespace {

ordered_json grid_to_json(const Grid& grid) {
  ordered_json j;
  j["requested"] = grid.requested.empty() ? "explicit values" : grid.requested;
  j["count"] = grid.values.size();
  if (!grid.values.empty()) {
    j["first"] = grid.values.front();
    j["last"] = grid.values.back();
  }
  return j;
}

ordered_json resolved_to_json(const RunConfig& config) {
  ordered_json r;
  r["threads"] = config.threads;
  r["format"] = config.format == OutputFormat::csv ? "csv" : "json";
  switch (config.scenario) {
    case Scenario::adiabatic: {
      const auto& a = config.adiabatic;
      r["scenario"] = "adiabatic";
      r["atom_count"] = a.atom_count;
      r["ng_over_kappa"] = grid_to_json(a.ng_over_kappa);
      r["temperatures_nK"] = a.temperatures_nK;
      r["kappa_scale_nK"] = a.kappa_scale_nK;
      break;
    }
    case Scenario::dynamic: {
      const auto& d = config.dynamic;
      r["scenario"] = "dynamic";
      const Complex alpha = d.resolved_alpha();
      r["alpha"] = {{"re", alpha.real()}, {"im", alpha.imag()}};
      r["alpha_defaulted"] = !d.alpha.has_value();
      r["g_ratios"] = {{"g22", d.g_ratios.g22}, {"g12", d.g_ratios.g12}};
      r["atom_number_ref"] = d.atom_number_ref;
      r["phi"] = d.phi;
      r["tau"] = grid_to_json(d.tau);
      r["rotate_frame"] = d.rotate_frame;
      break;
    }
    case Scenario::oracle_check: {
      const auto& o = config.oracle;
      r["scenario"] = "oracle-check";
      r["alpha_sq"] = o.alpha_sq;
      r["tau"] = grid_to_json(o.tau);
      r["ratio_sets"] = o.ratio_sets;
      r["cutoff"] = o.cutoff;
      r["tolerance"] = o.tolerance;
      r["phi"] = o.phi;
      break;
    }
  }
  return r;
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) {
    throw std::runtime_error("cannot write '" + path + "'");
  }
  out << content;
}

Table adiabatic_table(const RunConfig& config) {
  AdiabaticSweepConfig sweep;
  sweep.atom_count = config.adiabatic.atom_count;
  sweep.ng_over_kappa = config.adiabatic.ng_over_kappa.values;
  sweep.temperatures_nK = config.adiabatic.temperatures_nK;
  sweep.kappa_scale_nK = config.adiabatic.kappa_scale_nK;
  sweep.threads = config.threads;
  Table table;
  table.columns = {"Ng_over_kappa", "T_nK", "E_HZ", "E_entropic"};
  for (const AdiabaticRow& row : adiabatic_sweep(sweep)) {
    std::vector<Cell> cells;
    cells.push_back(Cell::num(row.ng_over_kappa));
    cells.push_back(Cell::num(row.temperature_nK));
    cells.push_back(Cell::opt(row.e_hz.value));
    cells.push_back(row.e_entropic ? Cell::opt(row.e_entropic->value)
                                   : Cell::undef());
    table.rows.push_back(std::move(cells));
  }
  return table;
}

Table dynamic_table(const RunConfig& config) {
  DynamicSweepConfig sweep;
  sweep.params = KerrParams::uniform(config.dynamic.resolved_alpha(),
                                     config.dynamic.g_ratios,
                                     config.dynamic.atom_number_ref, 0.0);
  sweep.tau_grid = config.dynamic.tau.values;
  sweep.phi = config.dynamic.phi;
  sweep.rotate_frame = config.dynamic.rotate_frame;
  sweep.threads = config.threads;
  Table table;
  table.columns = {"tau", "S_plus_dB", "S_minus_dB", "theta",
                   "E_product", "E_sum"};
  for (const DynamicRow& row : dynamic_sweep(sweep)) {
    std::vector<Cell> cells;
    cells.push_back(Cell::num(row.tau));
    cells.push_back(Cell::opt(row.squeezing.s_plus_db));
    cells.push_back(Cell::opt(row.squeezing.s_minus_db));
    cells.push_back(Cell::num(row.theta));
    cells.push_back(Cell::opt(row.e_product.value));
    cells.push_back(Cell::opt(row.e_sum.value));
    table.rows.push_back(std::move(cells));
  }
  return table;
}

Table oracle_table(const RunConfig& config, double& worst) {
  const auto& o = config.oracle;
  Table table;
  table.columns = {"alpha_sq", "ratio_set", "tau", "max_scaled_deviation"};
  worst = 0.0;
  for (double alpha_sq : o.alpha_sq) {
    const Complex alpha(std::sqrt(alpha_sq), 0.0);
    for (const std::string& set_name : o.ratio_sets) {
      const GRatios ratios = named_ratio_set(set_name);
      for (double tau : o.tau.values) {
        KerrParams params =
            KerrParams::uniform(alpha, ratios, 2.0 * alpha_sq, tau);
        const SpinMoments engine = dynamic_spin_moments(params, o.phi);
        const SpinMoments truth = fock_oracle(params, o.phi, o.cutoff);
        const double dev = max_moment_deviation(engine, truth);
        worst = std::max(worst, dev);
        table.rows.push_back({Cell::num(alpha_sq), Cell::str(set_name),
                              Cell::num(tau), Cell::num(dev)});
      }
    }
  }
  return table;
}

}  // namespace

std::string config_to_json(const RunConfig& config) {
  ordered_json doc;
  switch (config.scenario) {
    case Scenario::adiabatic: {
      doc["scenario"] = "adiabatic";
      ordered_json a;
      a["atom_count"] = config.adiabatic.atom_count;
      const auto& grid = config.adiabatic.ng_over_kappa;
      if (!grid.values.empty()) {
        a["ng_over_kappa"] = {{"min", grid.values.front()},
                              {"max", grid.values.back()},
                              {"points", grid.values.size()}};
      }
      a["temperatures_nK"] = config.adiabatic.temperatures_nK;
      a["kappa_scale_nK"] = config.adiabatic.kappa_scale_nK;
      doc["adiabatic"] = std::move(a);
      break;
    }
    case Scenario::dynamic: {
      doc["scenario"] = "dynamic";
      ordered_json d;
      const Complex alpha = config.dynamic.resolved_alpha();
      d["alpha"] = {{"re", alpha.real()}, {"im", alpha.imag()}};
      d["g_ratios"] = {{"g22", config.dynamic.g_ratios.g22},
                       {"g12", config.dynamic.g_ratios.g12}};
      d["atom_number_ref"] = config.dynamic.atom_number_ref;
      d["phi"] = config.dynamic.phi;
      const auto& grid = config.dynamic.tau;
      if (!grid.values.empty()) {
        d["tau"] = {{"min", grid.values.front()},
                    {"max", grid.values.back()},
                    {"points", grid.values.size()}};
      }
      d["rotate_frame"] = config.dynamic.rotate_frame;
      doc["dynamic"] = std::move(d);
      break;
    }
    case Scenario::oracle_check: {
      doc["scenario"] = "oracle-check";
      ordered_json o;
      o["alpha_sq"] = config.oracle.alpha_sq;
      const auto& grid = config.oracle.tau;
      if (!grid.values.empty()) {
        o["tau"] = {{"min", grid.values.front()},
                    {"max", grid.values.back()},
                    {"points", grid.values.size()}};
      }
      o["ratio_sets"] = config.oracle.ratio_sets;
      o["cutoff"] = config.oracle.cutoff;
      o["tolerance"] = config.oracle.tolerance;
      o["phi"] = config.oracle.phi;
      doc["oracle_check"] = std::move(o);
      break;
    }
  }
  doc["output"] = {{"path", config.output_path},
                   {"format",
                    config.format == OutputFormat::csv ? "csv" : "json"}};
  doc["threads"] = config.threads;
  return doc.dump(2) + "\n";
}

RunOutcome run(const RunConfig& config) {
  {
    const std::vector<Diagnostic> diags = validate_config(config);
    if (!diags.empty()) {
      RunOutcome outcome;
      outcome.exit_code = 2;
      std::string msg;
      for (const Diagnostic& d : diags) {
        msg += d.field + ": " + d.message + "\n";
      }
      outcome.message = msg;
      return outcome;
    }
  }
  const auto start = std::chrono::steady_clock::now();
  RunOutcome outcome;
  Table table;
  double oracle_worst = 0.0;
  try {
    switch (config.scenario) {
      case Scenario::adiabatic:
        table = adiabatic_table(config);
        break;
      case Scenario::dynamic:
        table = dynamic_table(config);
        break;
      case Scenario::oracle_check:
        table = oracle_table(config, oracle_worst);
        break;
    }
    const std::string rendered = config.format == OutputFormat::csv
                                     ? render_csv(table)
                                     : render_json(table);
    write_file(config.output_path, rendered);

    const double wall = std::chrono::duration<double>(
                            std::chrono::steady_clock::now() - start)
                            .count();
    ordered_json manifest;
    manifest["tool"] = std::string(kToolName);
    manifest["version"] = std::string(kVersion);
    manifest["resolved"] = resolved_to_json(config);
    manifest["output"] = {{"path", config.output_path},
                          {"rows", table.rows.size()}};
    if (config.scenario == Scenario::oracle_check) {
      manifest["max_scaled_deviation"] = oracle_worst;
      manifest["within_tolerance"] = oracle_worst <= config.oracle.tolerance;
    }
    manifest["wall_time_seconds"] = wall;
    write_file(config.output_path + ".manifest.json", manifest.dump(2) + "\n");

    outcome.rows_written = table.rows.size();
    if (config.scenario == Scenario::oracle_check &&
        oracle_worst > config.oracle.tolerance) {
      outcome.exit_code = 3;
      outcome.message = "oracle deviation " + format_double(oracle_worst) +
                        " exceeds tolerance " +
                        format_double(config.oracle.tolerance);
      return outcome;
    }
    outcome.message = "wrote " + std::to_string(table.rows.size()) +
                      " rows to " + config.output_path;
    if (config.scenario == Scenario::oracle_check) {
      outcome.message +=
          "; max scaled deviation " + format_double(oracle_worst);
    }
  } catch (const std::exception& e) {
    outcome.exit_code = 3;
    outcome.message = e.what();
  }
  return outcome;
}

}  // namespace twowell
