// Command-line driver: runs Riemann problems and samples dissipation
// functions and the smeared-step profile.

#include "hllxw/analysis.hpp"
#include "hllxw/cli.hpp"
#include "hllxw/dissipation.hpp"
#include "hllxw/solvers.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <fstream>
#include <iostream>
#include <sstream>

using namespace hllxw;
using nlohmann::json;

namespace {

struct RunFlags {
  std::string case_name;
  std::string config_path;
  std::optional<std::string> scheme;
  std::optional<double> omega;
  std::optional<std::string> path;
  std::optional<int> n;
  std::optional<double> cfl;
  std::optional<double> t_end;
  std::optional<double> gamma;
  std::optional<std::string> boundary;
  std::string out = "-";
  std::string format = "csv";
  std::string reference;
  std::string diagnostics;
  std::vector<std::string> variables;
  bool emit_config = false;
};

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("config: cannot read '" + path + "'");
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

// Flags become keys of the JSON case document, so they go through the same
// validation as a config file.
CaseConfig resolve_config(const RunFlags& f) {
  json doc = json::object();
  if (!f.config_path.empty()) {
    try {
      doc = json::parse(read_file(f.config_path));
    } catch (const json::parse_error& e) {
      throw ConfigError(std::string("config: invalid JSON: ") + e.what());
    }
    if (!doc.is_object()) throw ConfigError("config: top level must be an object");
  }
  if (!f.case_name.empty()) doc["case"] = f.case_name;
  if (!doc.contains("case") && !doc.contains("model")) doc["case"] = "sod";
  if (f.scheme) {
    doc["scheme"] = *f.scheme;
    doc.erase("omega");
    doc.erase("path");
  }
  if (f.omega) doc["omega"] = *f.omega;
  if (f.path) doc["path"] = *f.path;
  if (f.n) doc["n_cells"] = *f.n;
  if (f.cfl) doc["cfl"] = *f.cfl;
  if (f.t_end) doc["t_end"] = *f.t_end;
  if (f.gamma) doc["gamma"] = *f.gamma;
  if (f.boundary) doc["boundary"] = *f.boundary;
  return parse_config(doc.dump());
}

int do_run(const RunFlags& f) {
  CaseConfig config;
  OutputSpec output;
  try {
    config = resolve_config(f);
    if (f.format == "csv") {
      output.format = OutputFormat::Csv;
    } else if (f.format == "json") {
      output.format = OutputFormat::Json;
    } else {
      throw ConfigError("format: expected csv or json");
    }
    output.path = f.out;
    output.variables = f.variables;
    output.reference = parse_reference(f.reference);
    output.diagnostics_path = f.diagnostics;
  } catch (const std::exception& e) {
    std::cerr << error_json("config", e.what()) << '\n';
    return kExitConfig;
  }
  if (f.emit_config) {
    std::cout << emit_config(config);
    return kExitOk;
  }
  return run_case(config, output, std::cout, std::cerr);
}

struct DissipationFlags {
  std::string scheme = "hllx-omega";
  std::optional<double> omega;
  double nu_min = -1.0;
  double nu_max = 1.0;
  int samples = 201;
};

int do_dissipation(const DissipationFlags& f) {
  try {
    const SchemeKind kind = parse_scheme_kind(f.scheme);
    std::optional<OmegaParam> omega;
    if (scheme_uses_omega(kind)) {
      if (!f.omega) throw ConfigError("omega: required by scheme " + f.scheme);
      omega = OmegaParam(*f.omega);
    }
    const auto path = scheme_has_paths(kind) ? std::optional<EvalPath>(EvalPath::Composite) : std::nullopt;
    const FluxScheme scheme = FluxScheme::make(kind, omega, path);
    if (!(f.nu_min <= f.nu_max)) throw ConfigError("nu-min: must not exceed nu-max");
    const WaveBracket bracket = WaveBracket::from_courant(f.nu_min, f.nu_max);
    write_dissipation_csv(
        std::cout, [&](double nu) { return scheme_dissipation(scheme, nu, bracket); }, f.nu_min, f.nu_max,
        f.samples);
  } catch (const std::exception& e) {
    std::cerr << error_json("config", e.what()) << '\n';
    return kExitConfig;
  }
  return kExitOk;
}

struct UtildeFlags {
  double d_hat = 0.0;
  double xi_min = -10.0;
  double xi_max = 10.0;
  int samples = 201;
};

int do_utilde(const UtildeFlags& f) {
  try {
    write_utilde_csv(std::cout, f.d_hat, f.xi_min, f.xi_max, f.samples);
  } catch (const QuadratureError& e) {
    std::cerr << error_json("quadrature", e.what()) << '\n';
    return kExitRun;
  } catch (const std::exception& e) {
    std::cerr << error_json("config", e.what()) << '\n';
    return kExitConfig;
  }
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Finite-volume Riemann problem solver with HLL-type hybrid fluxes"};
  app.set_version_flag("--version", "hllxw 0.1.0");

  RunFlags run;
  app.add_option("--case", run.case_name, "Built-in case (see the cases subcommand)");
  app.add_option("--config", run.config_path, "JSON case document; flags override its keys");
  app.add_option("--scheme", run.scheme, "lf, rusanov, hll, lw, force, musta1, upwind, hllx, hll-omega, hllx-omega");
  app.add_option("--omega", run.omega, "Blend weight for hll-omega and hllx-omega, in [0,1]");
  app.add_option("--path", run.path, "composite or matrix (hllx, hllx-omega)");
  app.add_option("--n", run.n, "Number of cells");
  app.add_option("--cfl", run.cfl, "Courant number based on the largest speed");
  app.add_option("--tend", run.t_end, "Final time");
  app.add_option("--gamma", run.gamma, "Ratio of specific heats");
  app.add_option("--boundary", run.boundary, "zero-gradient or periodic");
  app.add_option("--out", run.out, "Output file, - for stdout");
  app.add_option("--format", run.format, "csv or json");
  app.add_option("--reference", run.reference, "exact (euler only) or fine:N");
  app.add_option("--diagnostics", run.diagnostics, "Per-step diagnostics CSV file");
  app.add_option("--variables", run.variables, "Primitive variables to write")->delimiter(',');
  app.add_flag("--emit-config", run.emit_config, "Print the resolved case document and exit");

  DissipationFlags diss;
  auto* dissipation = app.add_subcommand("dissipation", "Sample a scheme's dissipation function d(nu)");
  dissipation->add_option("--scheme", diss.scheme);
  dissipation->add_option("--omega", diss.omega);
  dissipation->add_option("--nu-min", diss.nu_min, "Slowest Courant number of the bracket");
  dissipation->add_option("--nu-max", diss.nu_max, "Fastest Courant number of the bracket");
  dissipation->add_option("--samples", diss.samples);

  UtildeFlags ut;
  auto* utilde_cmd = app.add_subcommand("utilde", "Sample the non-dimensional smeared-step profile");
  utilde_cmd->add_option("--dhat", ut.d_hat, "Non-dimensional diffusion");
  utilde_cmd->add_option("--xi-min", ut.xi_min);
  utilde_cmd->add_option("--xi-max", ut.xi_max);
  utilde_cmd->add_option("--samples", ut.samples);

  std::string show;
  auto* cases = app.add_subcommand("cases", "List built-in cases");
  cases->add_option("--show", show, "Print the full document of one case");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e);
    std::cerr << error_json("usage", e.what()) << '\n';
    return kExitConfig;
  }

  if (*dissipation) return do_dissipation(diss);
  if (*utilde_cmd) return do_utilde(ut);
  if (*cases) {
    if (show.empty()) {
      for (const auto& name : builtin_case_names()) std::cout << name << '\n';
      return kExitOk;
    }
    try {
      std::cout << emit_config(builtin_case(show));
    } catch (const std::exception& e) {
      std::cerr << error_json("config", e.what()) << '\n';
      return kExitConfig;
    }
    return kExitOk;
  }
  return do_run(run);
}
