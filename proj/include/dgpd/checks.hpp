#pragma once

#include <cstdint>
#include <filesystem>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"

namespace dgpd::cli {

using json = nlohmann::json;

struct Config {
  double tolerance = 1e-9;
  std::uint64_t seed = 42;
  unsigned jobs = 1;
  bool audit = false;
  bool timings = false;  // adds elapsed_ms to reports (breaks byte-identity)
  /// Relative file parameters are resolved against this directory.
  std::filesystem::path base_dir;
};

struct CheckSpec {
  std::string name;
  std::map<std::string, std::string> params;
  std::optional<double> tolerance;
  /// "pass" (default) or "fail": the suite verdict is pass when the raw
  /// outcome matches. Negative controls use "fail".
  std::optional<std::string> expect;
};

enum class Verdict { pass, fail, error };
std::string to_string(Verdict v);

struct Report {
  std::string check;
  Verdict verdict = Verdict::error;
  Verdict outcome = Verdict::error;  // before `expect` is applied
  std::optional<std::string> expect;
  std::string summary;
  json details = json::object();
  json config = json::object();  // seed, tolerance, audit, params
  std::optional<double> elapsed_ms;
};

/// Keys sorted; `jobs` is deliberately not echoed.
json to_json(const Report& r);
/// One line per report, no trailing spaces.
std::string to_json_line(const Report& r);

struct ParamInfo {
  std::string name;
  std::string help;
  std::string default_value;  // empty: optional without default
  bool positional = false;
};

struct CheckInfo {
  std::string name;
  std::string help;
  std::vector<ParamInfo> params;
  /// Fills outcome, summary and details.
  std::function<void(const std::map<std::string, std::string>&, const Config&, Report&)> body;
};

/// Sorted by name.
const std::vector<CheckInfo>& registry();
const CheckInfo* find_check(std::string_view name);

/// Dispatches one check. Throws UsageError (unknown check or parameter, bad
/// value, tolerance ≤ 0) and ParseError (malformed input files). Library
/// errors raised while checking become verdict "error".
Report run(const CheckSpec& spec, const Config& cfg);

/// [{"name", "params"?, "tolerance"?, "expect"?}]. Throws ParseError.
std::vector<CheckSpec> parse_manifest(const json& j);
std::vector<CheckSpec> load_manifest(const std::filesystem::path& path);

struct SuiteResult {
  std::vector<Report> reports;  // manifest order
  std::size_t passed = 0, failed = 0, errors = 0;
  bool ok() const { return failed == 0 && errors == 0; }
};

/// Runs up to cfg.jobs checks at once; each check runs single-threaded.
/// Usage and parse errors of an entry are reported as verdict "error".
SuiteResult run_suite(const std::vector<CheckSpec>& specs, const Config& cfg);

/// Writes every named double fixture and group fixture as JSON into `dir`.
/// Returns the file names written, sorted.
std::vector<std::string> export_fixtures(const std::filesystem::path& dir);

}  // namespace dgpd::cli
