// Job configs, command execution and reports for the command-line front end.
#pragma once

#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "hopflift/check.hpp"
#include "hopflift/datum.hpp"
#include "hopflift/errors.hpp"

namespace hopflift {

/// Bad or missing input; `pointer` is the JSON pointer of the offending field.
class ConfigError : public Error {
 public:
  ConfigError(const std::string& pointer, const std::string& msg)
      : Error(pointer.empty() ? msg : pointer + ": " + msg), pointer_(pointer) {}
  const std::string& pointer() const { return pointer_; }

 private:
  std::string pointer_;
};

struct JobConfig {
  std::optional<std::string> preset;
  int N = 3;
  std::optional<DatumSpec> datum;
  /// Generator values keyed by K-generator name (z_1, z_21, z_13, ...).
  std::map<std::string, CycNum> f_values;
  int cutoff = -1;
  std::vector<std::string> commands;
  /// Vertex split for prop36, zero-based (one-based in JSON).
  std::vector<int> S, T;

  friend bool operator==(const JobConfig&, const JobConfig&) = default;
};

JobConfig parse_config(const nlohmann::json& j);
JobConfig load_config(const std::string& path);
nlohmann::json config_to_json(const JobConfig& c);
/// Builds and validates the datum; a failed validation is a ConfigError.
CartanDatum make_datum(const JobConfig& c);

struct CheckRecord {
  Check check;
  double seconds = 0;
};

struct Report {
  std::string command;
  std::vector<CheckRecord> checks;
  std::vector<std::string> artifacts;
  std::vector<std::string> notes;

  bool pass() const;
};

struct RunOptions {
  std::optional<std::string> out;
  bool timings = false;
  int m = 1, n = 1;        // oracle lemma31
  std::string action;      // retraction build|verify
  int max_height = -1;     // retraction verify
};

/// Runs one command verb: lift, check, oracle, retraction, theorem33,
/// prop36 or selftest. Input problems raise ConfigError or hopflift::Error.
Report run_command(const std::string& cmd, const JobConfig& cfg, const RunOptions& opt);

nlohmann::json report_to_json(const Report& r, bool timings);
std::string report_to_text(const Report& r, bool timings);
/// Sorted keys and canonical numbers, so identical runs give identical bytes.
void emit_report(const Report& r, const std::string& format, bool timings, std::ostream& os);

}  // namespace hopflift
