#include <sys/wait.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <set>
#include <sstream>

#include "doctest.h"
#include "dgpd/checks.hpp"
#include "dgpd/compact.hpp"
#include "dgpd/double_groupoid.hpp"
#include "dgpd/error.hpp"
#include "dgpd/samples.hpp"
#include "dgpd/structure_io.hpp"

using namespace dgpd;
using namespace dgpd::cli;
namespace fs = std::filesystem;

namespace {

const fs::path kSource = DGPD_SOURCE_DIR;
const std::string kCli = DGPD_CLI_PATH;

fs::path scratch(const std::string& name) {
  auto dir = fs::temp_directory_path() / "dgpd-test-cli";
  fs::create_directories(dir);
  return dir / name;
}

fs::path write_file(const std::string& name, const std::string& text) {
  auto p = scratch(name);
  std::ofstream(p) << text;
  return p;
}

Report run_named(const std::string& name, std::map<std::string, std::string> params, Config cfg = {}) {
  return run(CheckSpec{name, std::move(params), std::nullopt, std::nullopt}, cfg);
}

int shell(const std::string& cmd) {
  const int st = std::system((cmd + " > /dev/null 2>&1").c_str());
  REQUIRE(WIFEXITED(st));
  return WEXITSTATUS(st);
}

std::string capture(const std::string& cmd) {
  const auto out = scratch("capture.txt");
  const int st = std::system((cmd + " > " + out.string() + " 2>/dev/null").c_str());
  CHECK(WIFEXITED(st));
  std::ifstream in(out);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::string fixture(const std::string& name) { return (kSource / "fixtures" / (name + ".json")).string(); }

}  // namespace

TEST_CASE("registry: sorted, unique, and every module operation reachable") {
  const auto& reg = registry();
  std::set<std::string> names;
  for (std::size_t i = 0; i < reg.size(); ++i) {
    names.insert(reg[i].name);
    CHECK(!reg[i].help.empty());
    CHECK(static_cast<bool>(reg[i].body));
    if (i) CHECK(reg[i - 1].name < reg[i].name);
    CHECK(find_check(reg[i].name) == &reg[i]);
  }
  CHECK(names.size() == reg.size());
  CHECK(find_check("no-such-check") == nullptr);

  // One invocation per check; this table must cover the registry.
  const fs::path u = write_file("u.json", R"({"0": [1, 0], "1": ["1/2", 0]})");
  const fs::path v = write_file("v.json", R"({"1": [2, 0]})");
  const fs::path z4 = write_file("z4.json", io::to_json(cyclic_group(4).to_data()).dump());
  const std::map<std::string, std::map<std::string, std::string>> calls = {
      {"coeff-conv", {{"group", "s3"}, {"random-pairs", "3"}}},
      {"compat-fuzz", {{"count", "3"}}},
      {"compat-scan", {{"fixture", "diagonal-z3"}}},
      {"convolve", {{"fixture", "from-group-z2"}, {"mode", "bullet"}, {"u", u.string()}, {"v", v.string()}}},
      {"double-target", {{"fixture", "q8-center"}}},
      {"haar-induce", {{"fixture", "z2-in-z4"}}},
      {"naive-compat", {{"group", "z4"}, {"sigma", "chi1"}, {"pi", "chi2"}}},
      {"nctorus", {{"r", "1"}, {"range", "2"}}},
      {"pair-matrix", {{"n", "3"}}},
      {"schur", {{"group", "q8"}}},
      {"sg-generic", {{"count", "3"}}},
      {"theorem-main", {{"group", "q8"}}},
      {"torus-bridge", {{"range", "1"}}},
      {"validate-double", {{"file", fixture("q8-center")}}},
      {"validate-groupoid", {{"file", z4.string()}}},
      {"validate-haar", {{"file", z4.string()}}},
      {"validate-rep", {{"group", "q8"}}},
      {"weak-compat", {{"group", "q8"}, {"random-pairs", "3"}}},
  };
  for (const auto& c : reg) {
    CAPTURE(c.name);
    REQUIRE(calls.count(c.name) == 1);
  }
  CHECK(calls.size() == reg.size());
  for (const auto& [name, params] : calls) {
    CAPTURE(name);
    const auto r = run_named(name, params);
    CHECK(r.verdict == Verdict::pass);
    CHECK(r.check == name);
  }
}

TEST_CASE("run: worked examples") {
  SUBCASE("validate-double on the Q8 centre fixture passes") {
    const auto r = run_named("validate-double", {{"file", fixture("q8-center")}});
    CHECK(r.verdict == Verdict::pass);
  }
  SUBCASE("compat-scan on from_group(Z/2) fails with witness (0,1,1,0)") {
    const auto r = run_named("compat-scan", {{"file", fixture("from-group-z2")}});
    CHECK(r.verdict == Verdict::fail);
    bool found = false;
    for (const auto& w : r.details["witnesses"]) found |= w["squares"] == json::array({"0", "1", "1", "0"});
    CHECK(found);
    CHECK(r.details["products_equal"] == false);
  }
  SUBCASE("nctorus closed forms at r = 1.4142135, range 5") {
    const auto r = run_named("nctorus", {{"r", "1.4142135"}, {"check", "closed-vs-oracle"}, {"range", "5"}});
    CHECK(r.verdict == Verdict::pass);
    CHECK(r.details["pairs"] == 11 * 11 * 11 * 11);
  }
  SUBCASE("convolve computes δ1 • δ1 on from_group(Z/2)") {
    const auto a = write_file("d1.json", R"({"1": [1, 0]})");
    const auto r = run_named("convolve", {{"fixture", "from-group-z2"}, {"mode", "bullet"}, {"u", a.string()},
                                          {"v", a.string()}});
    // Counting measure on Z/2: δ1*δ1 = δ0.
    CHECK(r.details["product"] == json::parse(R"({"0": [1, 0]})"));
  }
}

TEST_CASE("run: usage and parse errors") {
  CHECK_THROWS_AS(run_named("bogus", {}), UsageError);
  CHECK_THROWS_AS(run_named("pair-matrix", {{"size", "3"}}), UsageError);
  CHECK_THROWS_AS(run_named("pair-matrix", {{"n", "three"}}), UsageError);
  CHECK_THROWS_AS(run_named("pair-matrix", {{"n", "0"}}), UsageError);
  CHECK_THROWS_AS(run_named("nctorus", {{"check", "other"}}), UsageError);
  CHECK_THROWS_AS(run_named("schur", {{"group", "nope"}}), UsageError);
  CHECK_THROWS_AS(run_named("schur", {{"group", "s3"}, {"pi", "rho9"}}), UsageError);
  CHECK_THROWS_AS(run_named("validate-double", {}), UsageError);
  CHECK_THROWS_AS(run_named("validate-double", {{"file", "/no/such/file.json"}}), UsageError);
  CHECK_THROWS_AS(run_named("theorem-main", {{"group", "s3"}, {"k", "p012,p120"}}), UsageError);

  Config bad;
  bad.tolerance = 0;
  CHECK_THROWS_AS(run_named("pair-matrix", {}, bad), UsageError);
  CHECK_THROWS_AS(run(CheckSpec{"pair-matrix", {}, -1.0, std::nullopt}, Config{}), UsageError);
  CHECK_THROWS_AS(run(CheckSpec{"pair-matrix", {}, std::nullopt, "maybe"}, Config{}), UsageError);

  const auto broken = write_file("broken.json", "{\n  \"vertical\": [1,\n");
  try {
    run_named("validate-double", {{"file", broken.string()}});
    FAIL("expected ParseError");
  } catch (const ParseError& e) {
    CHECK(std::string(e.what()).find("broken.json:3:") != std::string::npos);
  }
}

TEST_CASE("run: library errors become verdict error") {
  auto j = io::to_json(samples::double_fixture("from-group-z2"));
  j["sideK"] = io::to_json(cyclic_group(3).to_data());
  const auto p = write_file("mismatch.json", j.dump());
  const auto r = run_named("validate-double", {{"file", p.string()}});
  CHECK(r.verdict == Verdict::error);
  CHECK(r.details.contains("error"));
}

TEST_CASE("expect field inverts the verdict, outcome keeps the raw result") {
  CheckSpec neg{"pair-matrix", {{"n", "2"}, {"transposed", "true"}}, std::nullopt, "fail"};
  auto r = run(neg, Config{});
  CHECK(r.outcome == Verdict::fail);
  CHECK(r.verdict == Verdict::pass);
  CHECK(to_json(r)["expect"] == "fail");

  neg.params["transposed"] = "false";
  r = run(neg, Config{});
  CHECK(r.outcome == Verdict::pass);
  CHECK(r.verdict == Verdict::fail);
}

TEST_CASE("reports: sorted keys, config echo, no timings by default") {
  Config cfg;
  cfg.seed = 9;
  const auto r = run_named("coeff-conv", {{"group", "z3"}, {"random-pairs", "2"}}, cfg);
  const auto j = to_json(r);
  CHECK(j["config"]["seed"] == 9);
  CHECK(j["config"]["tolerance"] == 1e-9);
  CHECK(j["config"]["params"]["group"] == "z3");
  CHECK(j["config"]["params"]["pi"] == "all");
  CHECK(!j.contains("elapsed_ms"));
  CHECK(!j["config"].contains("jobs"));
  const auto line = to_json_line(r);
  CHECK(line.find('\n') == std::string::npos);
  CHECK(line.rfind("{\"check\":", 0) == 0);

  cfg.timings = true;
  CHECK(to_json(run_named("pair-matrix", {{"n", "1"}}, cfg)).contains("elapsed_ms"));

  // Seeded inputs: same seed, same report; a different seed changes the draws.
  cfg.timings = false;
  CHECK(to_json_line(run_named("weak-compat", {{"group", "s3"}, {"random-pairs", "4"}}, cfg)) ==
        to_json_line(run_named("weak-compat", {{"group", "s3"}, {"random-pairs", "4"}}, cfg)));
  Config other = cfg;
  other.seed = 10;
  CHECK(to_json(run_named("weak-compat", {{"group", "s3"}, {"random-pairs", "4"}}, cfg))["details"]["max_gap"] !=
        to_json(run_named("weak-compat", {{"group", "s3"}, {"random-pairs", "4"}}, other))["details"]["max_gap"]);
}

TEST_CASE("manifests") {
  SUBCASE("parse errors") {
    CHECK_THROWS_AS(parse_manifest(json::object()), ParseError);
    CHECK_THROWS_AS(parse_manifest(json::parse(R"([{"params": {}}])")), ParseError);
    CHECK_THROWS_AS(parse_manifest(json::parse(R"([{"name": "x", "extra": 1}])")), ParseError);
    CHECK_THROWS_AS(parse_manifest(json::parse(R"([{"name": "x", "params": {"a": [1]}}])")), ParseError);
    CHECK_THROWS_AS(parse_manifest(json::parse(R"([{"name": "x", "tolerance": "small"}])")), ParseError);
  }
  SUBCASE("parameter values of any scalar type become strings") {
    const auto specs = parse_manifest(json::parse(R"([{"name": "x", "params": {"n": 3, "b": true, "r": 0.1}}])"));
    REQUIRE(specs.size() == 1);
    CHECK(specs[0].params.at("n") == "3");
    CHECK(specs[0].params.at("b") == "true");
    CHECK(std::stod(specs[0].params.at("r")) == 0.1);
  }
  SUBCASE("empty manifest passes with zero checks") {
    const auto res = run_suite(load_manifest(kSource / "manifests/empty.json"), Config{});
    CHECK(res.reports.empty());
    CHECK(res.ok());
  }
  SUBCASE("negative control fails, the other checks are unaffected") {
    Config cfg;
    cfg.base_dir = kSource / "manifests";
    const auto res = run_suite(load_manifest(kSource / "manifests/negative-control.json"), cfg);
    REQUIRE(res.reports.size() == 3);
    CHECK(res.failed == 1);
    CHECK(res.passed == 2);
    CHECK(res.reports[1].verdict == Verdict::fail);
    CHECK(!res.ok());
  }
  SUBCASE("entry errors are isolated") {
    const std::vector<CheckSpec> specs = {{"pair-matrix", {{"n", "2"}}, std::nullopt, std::nullopt},
                                          {"bogus", {}, std::nullopt, std::nullopt},
                                          {"pair-matrix", {{"n", "x"}}, std::nullopt, std::nullopt}};
    const auto res = run_suite(specs, Config{});
    CHECK(res.passed == 1);
    CHECK(res.errors == 2);
    CHECK(res.reports[1].check == "bogus");
  }
  SUBCASE("shipped reproduction manifest names only registered checks") {
    const auto specs = load_manifest(kSource / "manifests/reproduction.json");
    CHECK(specs.size() > 100);
    std::set<std::string> used;
    for (const auto& s : specs) {
      CHECK(find_check(s.name) != nullptr);
      used.insert(s.name);
    }
    CHECK(used.count("theorem-main"));
    CHECK(used.count("torus-bridge"));
  }
  SUBCASE("suite order and content do not depend on --jobs") {
    std::vector<CheckSpec> specs;
    for (const char* g : {"z2", "z5", "s3", "q8"}) {
      specs.push_back({"schur", {{"group", g}}, 1e-12, std::nullopt});
      specs.push_back({"coeff-conv", {{"group", g}, {"random-pairs", "5"}}, std::nullopt, std::nullopt});
    }
    Config one, four;
    four.jobs = 4;
    const auto a = run_suite(specs, one);
    const auto b = run_suite(specs, four);
    REQUIRE(a.reports.size() == b.reports.size());
    for (std::size_t i = 0; i < a.reports.size(); ++i) CHECK(to_json_line(a.reports[i]) == to_json_line(b.reports[i]));
  }
}

TEST_CASE("export: shipped fixtures match the built-in ones") {
  const auto dir = scratch("export");
  fs::remove_all(dir);
  const auto files = export_fixtures(dir);
  CHECK(files.size() == samples::double_fixture_names().size() + 7);
  for (const auto& f : files) {
    CAPTURE(f);
    std::ifstream a(dir / f), b(kSource / "fixtures" / f);
    std::stringstream sa, sb;
    sa << a.rdbuf();
    sb << b.rdbuf();
    CHECK(sa.str() == sb.str());
  }
  for (const auto& name : samples::double_fixture_names()) {
    CAPTURE(name);
    const auto loaded = io::double_from_json(io::read_json_file(dir / (name + ".json")));
    const auto builtin = samples::double_fixture(name);
    CHECK(validate_double(loaded).ok() == validate_double(builtin).ok());
    CHECK(loaded.square_count() == builtin.square_count());
  }
  const auto q8 = cg::fixture_from_json(io::read_json_file(dir / "group-q8.json"));
  CHECK(q8.group.order() == 8);
  CHECK(q8.irreps.size() == 5);
  CHECK(run_named("schur", {{"group", (dir / "group-q8.json").string()}}).verdict == Verdict::pass);
}

TEST_CASE("binary: exit codes and output") {
  CHECK(shell(kCli + " validate-double " + fixture("q8-center")) == 0);
  CHECK(shell(kCli + " compat-scan " + fixture("from-group-z2")) == 1);
  CHECK(shell(kCli + " nctorus --r 1.4142135 --check closed-vs-oracle --range 5") == 0);
  CHECK(shell(kCli + " schur --group s3") == 0);
  CHECK(shell(kCli + " naive-compat --group s3 --sigma rho2 --pi rho2") == 1);
  CHECK(shell(kCli + " torus-bridge --r 0.6283185307179586 --range 2 --flip-sign") == 1);
  CHECK(shell(kCli + " theorem-main --group q8 --k center --pi rho2 --u one --v one --all-indices") == 0);
  CHECK(shell(kCli + " suite " + (kSource / "manifests/empty.json").string()) == 0);
  CHECK(shell(kCli + " suite " + (kSource / "manifests/negative-control.json").string()) == 1);
  // usage / parse errors
  CHECK(shell(kCli) == 2);
  CHECK(shell(kCli + " bogus") == 2);
  CHECK(shell(kCli + " nctorus --r abc") == 2);
  CHECK(shell(kCli + " nctorus --tolerance 0") == 2);
  CHECK(shell(kCli + " nctorus --unknown 1") == 2);
  CHECK(shell(kCli + " validate-double /no/such.json") == 2);
  CHECK(shell(kCli + " suite " + write_file("bad-manifest.json", "[{").string()) == 2);
  CHECK(shell(kCli + " --help") == 0);

  const auto line = capture(kCli + " --json --seed 5 pair-matrix --n 2");
  CHECK(json::parse(line)["config"]["seed"] == 5);
  CHECK(std::count(line.begin(), line.end(), '\n') == 1);
  const auto env = capture("DGPD_SEED=77 " + kCli + " --json --seed 5 pair-matrix --n 2");
  CHECK(json::parse(env)["config"]["seed"] == 77);
  // global flags may follow the subcommand
  CHECK(json::parse(capture(kCli + " pair-matrix --n 2 --json --tolerance 0.5"))["config"]["tolerance"] == 0.5);

  const auto table = capture(kCli + " suite " + (kSource / "manifests/negative-control.json").string());
  CHECK(table.find("3 checks: 2 pass, 1 fail, 0 error") != std::string::npos);
}
