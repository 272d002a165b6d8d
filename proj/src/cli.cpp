#include "hllxw/cli.hpp"

#include "hllxw/models.hpp"
#include "hllxw/reference.hpp"

#include <json.hpp>

#include <algorithm>
#include <fstream>
#include <iomanip>
#include <ostream>
#include <set>
#include <sstream>

namespace hllxw {

using nlohmann::json;

namespace {

StateVec vec(std::initializer_list<double> values) {
  StateVec v(static_cast<Eigen::Index>(values.size()));
  Eigen::Index k = 0;
  for (double x : values) v[k++] = x;
  return v;
}

}  // namespace

std::vector<std::string> builtin_case_names() { return {"sod", "mhd-shocktube", "r13-riemann", "advection-sign"}; }

CaseConfig builtin_case(std::string_view name) {
  CaseConfig c;
  c.name = std::string(name);
  c.scheme = FluxScheme::simple(SchemeKind::HLL);
  if (name == "sod") {
    c.model = {"euler", 1.4, 0.0, 1.0};
    c.left = vec({1.0, 0.0, 1.0});
    c.right = vec({0.125, 0.0, 0.1});
    c.x_left = -2.0;
    c.x_right = 2.0;
    c.n_cells = 200;
    c.cfl_nu_bar = 0.95;
    c.t_end = 0.8;
  } else if (name == "mhd-shocktube") {
    c.model = {"mhd", 5.0 / 3.0, 1.5, 1.0};
    // rho, vx, vy, vz, p, By, Bz
    c.left = vec({1.0, 0.0, 0.0, 0.0, 1.0, 0.5, 0.6});
    c.right = vec({1.0, 0.0, 0.0, 0.0, 1.0, 1.6, 0.2});
    c.x_left = -4.0;
    c.x_right = 4.0;
    c.n_cells = 200;
    c.cfl_nu_bar = 0.95;
    c.t_end = 1.0;
  } else if (name == "r13-riemann") {
    c.model = {"r13", 1.4, 0.0, 1.0};
    c.left = vec({3.0, 0.0, 0.1, 0.0, 3.0, 3.0, 3.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0});
    c.right = vec({1.0, 0.0, 0.0, 0.1, 3.0, 3.0, 3.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0});
    c.x_left = -2.0;
    c.x_right = 2.4;
    c.n_cells = 200;
    c.cfl_nu_bar = 0.8;
    c.t_end = 0.9;
  } else if (name == "advection-sign") {
    c.model = {"advection", 1.4, 0.0, 1.0};
    c.left = vec({-1.0});
    c.right = vec({1.0});
    c.x_left = -1.0;
    c.x_right = 1.0;
    c.n_cells = 200;
    c.cfl_nu_bar = 0.5;
    c.t_end = 0.25;
    c.boundary = BoundaryKind::Periodic;
  } else {
    throw ConfigError("case: unknown built-in case '" + std::string(name) +
                      "' (expected sod, mhd-shocktube, r13-riemann, advection-sign)");
  }
  return c;
}

namespace {

const std::set<std::string> kKeys{"case",   "name",    "model",  "gamma",   "bx",   "advection_speed",
                                  "left",   "right",   "x0",     "x_left",  "x_right", "n_cells",
                                  "cfl",    "t_end",   "scheme", "omega",   "path", "snapshot_times",
                                  "boundary"};

double number(const json& doc, const char* key) {
  const json& v = doc.at(key);
  if (!v.is_number()) throw ConfigError(std::string(key) + ": must be a number");
  return v.get<double>();
}

std::string text(const json& doc, const char* key) {
  const json& v = doc.at(key);
  if (!v.is_string()) throw ConfigError(std::string(key) + ": must be a string");
  return v.get<std::string>();
}

StateVec state(const json& doc, const char* key) {
  const json& v = doc.at(key);
  if (!v.is_array() || v.empty() || v.size() > static_cast<std::size_t>(kMaxVars)) {
    throw ConfigError(std::string(key) + ": must be a non-empty array of primitive values");
  }
  StateVec s(static_cast<Eigen::Index>(v.size()));
  for (std::size_t k = 0; k < v.size(); ++k) {
    if (!v[k].is_number()) throw ConfigError(std::string(key) + ": entries must be numbers");
    s[static_cast<Eigen::Index>(k)] = v[k].get<double>();
  }
  return s;
}

}  // namespace

CaseConfig parse_config(std::string_view source) {
  json doc;
  try {
    doc = json::parse(source);
  } catch (const json::parse_error& e) {
    throw ConfigError(std::string("config: invalid JSON: ") + e.what());
  }
  if (!doc.is_object()) throw ConfigError("config: top level must be an object");
  for (const auto& item : doc.items()) {
    if (!kKeys.count(item.key())) throw ConfigError(item.key() + ": unknown key");
  }

  CaseConfig c = doc.contains("case") ? builtin_case(text(doc, "case")) : CaseConfig{};
  if (doc.contains("name")) c.name = text(doc, "name");
  if (doc.contains("model")) c.model.id = text(doc, "model");
  if (doc.contains("gamma")) c.model.gamma = number(doc, "gamma");
  if (doc.contains("bx")) c.model.bx = number(doc, "bx");
  if (doc.contains("advection_speed")) c.model.advection_speed = number(doc, "advection_speed");
  if (doc.contains("left")) c.left = state(doc, "left");
  if (doc.contains("right")) c.right = state(doc, "right");
  if (doc.contains("x0")) c.x0 = number(doc, "x0");
  if (doc.contains("x_left")) c.x_left = number(doc, "x_left");
  if (doc.contains("x_right")) c.x_right = number(doc, "x_right");
  if (doc.contains("n_cells")) {
    if (!doc["n_cells"].is_number_integer()) throw ConfigError("n_cells: must be an integer");
    c.n_cells = doc["n_cells"].get<int>();
  }
  if (doc.contains("cfl")) c.cfl_nu_bar = number(doc, "cfl");
  if (doc.contains("t_end")) c.t_end = number(doc, "t_end");
  if (doc.contains("snapshot_times")) {
    const json& v = doc["snapshot_times"];
    if (!v.is_array()) throw ConfigError("snapshot_times: must be an array of numbers");
    c.snapshot_times.clear();
    for (const auto& t : v) {
      if (!t.is_number()) throw ConfigError("snapshot_times: entries must be numbers");
      c.snapshot_times.push_back(t.get<double>());
    }
  }
  try {
    if (doc.contains("boundary")) c.boundary = parse_boundary(text(doc, "boundary"));

    SchemeKind kind = c.scheme.kind();
    if (doc.contains("scheme")) kind = parse_scheme_kind(text(doc, "scheme"));
    std::optional<OmegaParam> omega = doc.contains("scheme") ? std::nullopt : c.scheme.omega();
    std::optional<EvalPath> path = doc.contains("scheme") ? std::nullopt : c.scheme.path();
    if (doc.contains("omega")) {
      if (!scheme_uses_omega(kind)) {
        throw ConfigError("omega: not used by scheme " + std::string(scheme_name(kind)));
      }
      omega = OmegaParam(number(doc, "omega"));
    }
    if (doc.contains("path")) {
      if (!scheme_has_paths(kind)) {
        throw ConfigError("path: not used by scheme " + std::string(scheme_name(kind)));
      }
      path = parse_path(text(doc, "path"));
    }
    if (scheme_uses_omega(kind) && !omega) {
      throw ConfigError("omega: required by scheme " + std::string(scheme_name(kind)));
    }
    if (scheme_has_paths(kind) && !path) path = EvalPath::Composite;
    c.scheme = FluxScheme::make(kind, omega, path);
  } catch (const std::invalid_argument& e) {
    const std::string msg = e.what();
    throw ConfigError(msg.rfind("omega", 0) == 0 ? "omega: " + msg : msg);
  } catch (const ContractViolation& e) {
    throw ConfigError(e.what());
  }

  try {
    c.validate();
  } catch (const ContractViolation& e) {
    throw ConfigError(e.what());
  } catch (const std::invalid_argument& e) {
    throw ConfigError(std::string("model: ") + e.what());
  }
  return c;
}

std::string emit_config(const CaseConfig& c) {
  json doc;
  doc["name"] = c.name;
  doc["model"] = c.model.id;
  doc["gamma"] = c.model.gamma;
  doc["bx"] = c.model.bx;
  doc["advection_speed"] = c.model.advection_speed;
  doc["left"] = std::vector<double>(c.left.data(), c.left.data() + c.left.size());
  doc["right"] = std::vector<double>(c.right.data(), c.right.data() + c.right.size());
  doc["x0"] = c.x0;
  doc["x_left"] = c.x_left;
  doc["x_right"] = c.x_right;
  doc["n_cells"] = c.n_cells;
  doc["cfl"] = c.cfl_nu_bar;
  doc["t_end"] = c.t_end;
  doc["scheme"] = std::string(scheme_name(c.scheme.kind()));
  if (c.scheme.omega()) doc["omega"] = c.scheme.omega()->value();
  if (c.scheme.path()) doc["path"] = std::string(path_name(*c.scheme.path()));
  doc["snapshot_times"] = c.snapshot_times;
  doc["boundary"] = std::string(boundary_name(c.boundary));
  return doc.dump(2) + "\n";
}

ReferenceSpec parse_reference(std::string_view t) {
  ReferenceSpec r;
  if (t.empty() || t == "none") return r;
  if (t == "exact") {
    r.kind = ReferenceSpec::Kind::Exact;
    return r;
  }
  if (t.rfind("fine:", 0) == 0) {
    const std::string n(t.substr(5));
    std::size_t used = 0;
    int value = 0;
    try {
      value = std::stoi(n, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used != n.size() || value < 2) throw ConfigError("reference: expected fine:N with integer N >= 2");
    r.kind = ReferenceSpec::Kind::Fine;
    r.n_fine = value;
    return r;
  }
  throw ConfigError("reference: expected 'exact' or 'fine:N', got '" + std::string(t) + "'");
}

std::string error_json(std::string_view kind, std::string_view message) {
  json doc;
  doc["error"] = {{"kind", std::string(kind)}, {"message", std::string(message)}};
  return doc.dump();
}

namespace {

struct Column {
  std::string name;
  std::vector<double> values;
};

std::vector<Column> primitive_columns(const CellStates& cells, const Model& model,
                                      const std::vector<std::string>& variables, const std::string& suffix) {
  std::vector<Column> cols;
  for (const auto& v : variables) cols.push_back({v + suffix, extract_variable(cells, model, v)});
  return cols;
}

void write_diagnostics(std::ostream& out, const RunResult& result, const Model& model) {
  const auto names = model.variable_names();
  out << "step,t,dt,max_speed,max_courant";
  for (const auto& n : names) out << ",min_" << n << ",max_" << n;
  out << ",degenerate_fallbacks,bound_enlargements,stalled_estimates\n" << std::setprecision(17);
  for (const auto& d : result.diagnostics) {
    out << d.step << ',' << d.t << ',' << d.dt << ',' << d.max_speed << ',' << d.max_courant;
    for (Eigen::Index k = 0; k < d.prim_min.size(); ++k) out << ',' << d.prim_min[k] << ',' << d.prim_max[k];
    out << ',' << d.degenerate_fallbacks << ',' << d.bound_enlargements << ',' << d.stalled_estimates << '\n';
  }
}

}  // namespace

int run_case(const CaseConfig& config, const OutputSpec& output, std::ostream& out, std::ostream& err) {
  std::unique_ptr<Model> model;
  std::vector<std::string> variables;
  try {
    config.validate();
    model = config.make_model();
    const auto names = model->variable_names();
    variables = output.variables.empty() ? names : output.variables;
    for (const auto& v : variables) {
      if (std::find(names.begin(), names.end(), v) == names.end()) {
        throw ConfigError("variables: '" + v + "' is not a variable of model " + config.model.id);
      }
    }
    if (output.reference.kind == ReferenceSpec::Kind::Exact && config.model.id != "euler") {
      throw ConfigError("reference: exact solution available for the euler model only");
    }
    if (output.reference.kind == ReferenceSpec::Kind::Fine && output.reference.n_fine % config.n_cells != 0) {
      throw ConfigError("reference: fine:N needs N to be a multiple of n_cells");
    }
  } catch (const std::exception& e) {
    err << error_json("config", e.what()) << '\n';
    return kExitConfig;
  }

  RunResult result{config.grid(), {}, {}, 0.0, {}, {}, {}};
  std::vector<Column> columns;
  std::vector<Column> reference;
  try {
    result = run(config, *model);
    columns = primitive_columns(result.final_, *model, variables, "");
    if (output.reference.kind == ReferenceSpec::Kind::Exact) {
      const ExactSodSolution exact(config.model.gamma, {config.left[0], config.left[1], config.left[2]},
                                   {config.right[0], config.right[1], config.right[2]});
      reference = primitive_columns(exact_cell_averages(exact, result.grid, config.x0, result.t_final), *model,
                                    variables, "_exact");
    } else if (output.reference.kind == ReferenceSpec::Kind::Fine) {
      const CellStates fine = restrict_cells(fine_reference(config, output.reference.n_fine), config.n_cells);
      reference = primitive_columns(fine, *model, variables, "_ref");
    }
  } catch (const RunError& e) {
    std::ostringstream msg;
    msg << e.what() << " (interface " << e.interface_index() << ", t=" << e.time() << ")";
    err << error_json("run", msg.str()) << '\n';
    return kExitRun;
  } catch (const std::exception& e) {
    err << error_json("run", e.what()) << '\n';
    return kExitRun;
  }

  std::ofstream file;
  std::ostream* sink = &out;
  if (output.path != "-") {
    file.open(output.path);
    if (!file) {
      err << error_json("io", "cannot open output file '" + output.path + "'") << '\n';
      return kExitIo;
    }
    sink = &file;
  }

  const Grid1D& grid = result.grid;
  if (output.format == OutputFormat::Csv) {
    *sink << "x";
    for (const auto& c : columns) *sink << ',' << c.name;
    for (const auto& c : reference) *sink << ',' << c.name;
    *sink << '\n' << std::setprecision(17);
    for (int i = 0; i < grid.n_cells(); ++i) {
      *sink << grid.center(i);
      for (const auto& c : columns) *sink << ',' << c.values[i];
      for (const auto& c : reference) *sink << ',' << c.values[i];
      *sink << '\n';
    }
  } else {
    json doc;
    doc["case"] = config.name;
    doc["scheme"] = std::string(scheme_name(config.scheme.kind()));
    if (config.scheme.omega()) doc["omega"] = config.scheme.omega()->value();
    doc["t"] = result.t_final;
    doc["steps"] = result.diagnostics.size();
    doc["x"] = grid.centers();
    for (const auto& c : columns) doc["variables"][c.name] = c.values;
    for (const auto& c : reference) doc["reference"][c.name] = c.values;
    const StateVec residual = result.ledger.residual();
    doc["conservation_residual"] = std::vector<double>(residual.data(), residual.data() + residual.size());
    *sink << doc.dump() << '\n';
  }
  sink->flush();
  if (!*sink) {
    err << error_json("io", "failed writing output") << '\n';
    return kExitIo;
  }

  if (!output.diagnostics_path.empty()) {
    std::ofstream diag(output.diagnostics_path);
    if (!diag) {
      err << error_json("io", "cannot open diagnostics file '" + output.diagnostics_path + "'") << '\n';
      return kExitIo;
    }
    write_diagnostics(diag, result, *model);
    if (!diag) {
      err << error_json("io", "failed writing diagnostics") << '\n';
      return kExitIo;
    }
  }
  return kExitOk;
}

}  // namespace hllxw
