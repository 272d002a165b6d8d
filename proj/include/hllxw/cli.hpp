#pragma once

#include "hllxw/timeloop.hpp"

#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace hllxw {

/// Invalid configuration document or flag; names the key and the constraint.
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

std::vector<std::string> builtin_case_names();
CaseConfig builtin_case(std::string_view name);

/// Parses a JSON case document. A "case" key starts from that built-in case;
/// every other key overrides it. Unknown keys are rejected.
CaseConfig parse_config(std::string_view text);

/// Fully explicit JSON document for `config`; parse_config reproduces it.
std::string emit_config(const CaseConfig& config);

enum class OutputFormat { Csv, Json };

struct ReferenceSpec {
  enum class Kind { None, Exact, Fine } kind = Kind::None;
  int n_fine = 0;
};

/// "exact" or "fine:N".
ReferenceSpec parse_reference(std::string_view text);

struct OutputSpec {
  OutputFormat format = OutputFormat::Csv;
  std::string path = "-";  // "-" is stdout
  std::vector<std::string> variables;  // empty: all primitive variables
  ReferenceSpec reference;
  std::string diagnostics_path;  // empty: none
};

/// Runs the case and writes the requested outputs. Returns the process exit
/// status; errors are reported on `err` as a one-line JSON object.
int run_case(const CaseConfig& config, const OutputSpec& output, std::ostream& out, std::ostream& err);

/// One-line machine-readable error: {"error":{"kind":...,"message":...}}.
std::string error_json(std::string_view kind, std::string_view message);

inline constexpr int kExitOk = 0;
inline constexpr int kExitConfig = 2;
inline constexpr int kExitRun = 3;
inline constexpr int kExitIo = 4;

}  // namespace hllxw
