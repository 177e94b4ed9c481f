#include <cstdlib>
#include <iostream>
#include <map>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "dgpd/checks.hpp"
#include "dgpd/error.hpp"

namespace {

using namespace dgpd::cli;

constexpr int kExitPass = 0;
constexpr int kExitFail = 1;
constexpr int kExitUsage = 2;

bool is_flag(const ParamInfo& p) { return p.default_value == "true" || p.default_value == "false"; }

void print_table(const std::vector<Report>& reports, std::ostream& os) {
  std::size_t wc = 5, wv = 7;
  for (const auto& r : reports) {
    wc = std::max(wc, r.check.size());
    wv = std::max(wv, to_string(r.verdict).size() + (r.expect ? 16 : 0));
  }
  auto row = [&](const std::string& a, const std::string& b, const std::string& c) {
    os << a << std::string(wc - a.size() + 2, ' ') << b << std::string(wv - b.size() + 2, ' ') << c << '\n';
  };
  row("check", "verdict", "summary");
  row(std::string(wc, '-'), std::string(wv, '-'), std::string(7, '-'));
  for (const auto& r : reports) {
    std::string v = to_string(r.verdict);
    if (r.expect) v += " (expected " + *r.expect + ")";
    std::string s = r.summary;
    if (r.elapsed_ms) s += "  [" + std::to_string(static_cast<long long>(*r.elapsed_ms)) + " ms]";
    row(r.check, v, s);
  }
}

void emit(const std::vector<Report>& reports, bool as_json) {
  if (as_json) {
    for (const auto& r : reports) std::cout << to_json_line(r) << '\n';
  } else {
    print_table(reports, std::cout);
  }
}

int verdict_exit(Verdict v) {
  switch (v) {
    case Verdict::pass: return kExitPass;
    case Verdict::fail: return kExitFail;
    case Verdict::error: return kExitUsage;
  }
  return kExitUsage;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Finite-scale checks for double groupoids, their convolution algebras and compact 2-groups", "dgpd"};
  app.fallthrough();
  app.require_subcommand(1);

  Config cfg;
  bool as_json = false;
  app.add_option("--tolerance", cfg.tolerance, "comparison tolerance")->capture_default_str();
  app.add_option("--seed", cfg.seed, "random seed (DGPD_SEED overrides)")->capture_default_str();
  app.add_option("--jobs", cfg.jobs, "parallelism")->capture_default_str()->check(CLI::PositiveNumber);
  app.add_flag("--audit", cfg.audit, "full quartic scans");
  app.add_flag("--json", as_json, "JSON-lines output");
  app.add_flag("--timings", cfg.timings, "add elapsed_ms to reports");

  // One subcommand per registered check; values land in `given`.
  std::map<std::string, std::map<std::string, std::string>> given;
  std::map<std::string, CLI::App*> check_cmds;
  for (const auto& info : registry()) {
    auto* sub = app.add_subcommand(info.name, info.help);
    auto& slot = given[info.name];
    for (const auto& p : info.params) {
      std::string* target = &slot[p.name];
      std::string help = p.help + (p.default_value.empty() ? "" : " [" + p.default_value + "]");
      if (is_flag(p))
        sub->add_flag("--" + p.name + "{true}", *target, help);
      else if (p.positional)
        sub->add_option(p.name + ",--" + p.name, *target, help);
      else
        sub->add_option("--" + p.name, *target, help);
    }
    check_cmds[info.name] = sub;
  }

  std::string manifest;
  auto* suite = app.add_subcommand("suite", "Run every check listed in a manifest");
  suite->add_option("manifest", manifest, "manifest JSON file")->required();

  std::string export_dir = "fixtures";
  auto* exp = app.add_subcommand("export", "Write the built-in fixtures as JSON files");
  exp->add_option("dir", export_dir, "output directory")->capture_default_str();

  auto* list = app.add_subcommand("list", "List the registered checks");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitPass : kExitUsage;
  }

  if (const char* env = std::getenv("DGPD_SEED")) {
    char* end = nullptr;
    cfg.seed = std::strtoull(env, &end, 10);
    if (*env == '\0' || *end != '\0') {
      std::cerr << "dgpd: error: DGPD_SEED is not an unsigned integer: " << env << '\n';
      return kExitUsage;
    }
  }

  try {
    if (list->parsed()) {
      for (const auto& info : registry()) std::cout << info.name << "  " << info.help << '\n';
      return kExitPass;
    }
    if (exp->parsed()) {
      for (const auto& f : export_fixtures(export_dir)) std::cout << export_dir << '/' << f << '\n';
      return kExitPass;
    }
    if (suite->parsed()) {
      const auto specs = load_manifest(manifest);
      cfg.base_dir = std::filesystem::path(manifest).parent_path();
      const auto res = run_suite(specs, cfg);
      emit(res.reports, as_json);
      if (!as_json)
        std::cout << res.reports.size() << " checks: " << res.passed << " pass, " << res.failed << " fail, "
                  << res.errors << " error\n";
      return res.errors ? kExitUsage : res.failed ? kExitFail : kExitPass;
    }
    for (const auto& [name, sub] : check_cmds) {
      if (!sub->parsed()) continue;
      CheckSpec spec;
      spec.name = name;
      for (const auto& [k, v] : given[name])
        if (sub->count("--" + k) > 0) spec.params[k] = v;
      const auto report = run(spec, cfg);
      emit({report}, as_json);
      return verdict_exit(report.verdict);
    }
  } catch (const dgpd::Error& e) {
    std::cerr << "dgpd: error: " << e.what() << '\n';
    return kExitUsage;
  }
  return kExitUsage;
}
