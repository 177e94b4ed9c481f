#include "dgpd/checks.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <random>
#include <set>
#include <sstream>
#include <thread>

#include "dgpd/compact.hpp"
#include "dgpd/convolution.hpp"
#include "dgpd/double_groupoid.hpp"
#include "dgpd/error.hpp"
#include "dgpd/haar.hpp"
#include "dgpd/nctorus.hpp"
#include "dgpd/samples.hpp"
#include "dgpd/singular.hpp"
#include "dgpd/structure_io.hpp"

namespace dgpd::cli {

namespace fs = std::filesystem;
using Params = std::map<std::string, std::string>;

std::string to_string(Verdict v) {
  switch (v) {
    case Verdict::pass: return "pass";
    case Verdict::fail: return "fail";
    case Verdict::error: return "error";
  }
  return "error";
}

json to_json(const Report& r) {
  json j;
  j["check"] = r.check;
  j["verdict"] = to_string(r.verdict);
  j["outcome"] = to_string(r.outcome);
  if (r.expect) j["expect"] = *r.expect;
  j["summary"] = r.summary;
  j["details"] = r.details;
  j["config"] = r.config;
  if (r.elapsed_ms) j["elapsed_ms"] = *r.elapsed_ms;
  return j;
}

std::string to_json_line(const Report& r) { return to_json(r).dump(); }

namespace {

// --- parameter access ---------------------------------------------------------

struct Args {
  const Params& p;
  const Config& cfg;

  const std::string& str(const std::string& k) const {
    auto it = p.find(k);
    if (it == p.end()) throw UsageError("missing parameter '" + k + "'");
    return it->second;
  }
  bool has(const std::string& k) const {
    auto it = p.find(k);
    return it != p.end() && !it->second.empty();
  }
  double real(const std::string& k) const {
    const auto& s = str(k);
    char* end = nullptr;
    double x = std::strtod(s.c_str(), &end);
    if (s.empty() || *end != '\0' || !std::isfinite(x)) throw UsageError("parameter '" + k + "': not a number: " + s);
    return x;
  }
  std::int64_t integer(const std::string& k, std::int64_t lo, std::int64_t hi) const {
    const auto& s = str(k);
    char* end = nullptr;
    long long x = std::strtoll(s.c_str(), &end, 10);
    if (s.empty() || *end != '\0') throw UsageError("parameter '" + k + "': not an integer: " + s);
    if (x < lo || x > hi)
      throw UsageError("parameter '" + k + "' must lie in [" + std::to_string(lo) + ", " + std::to_string(hi) + "]");
    return x;
  }
  bool flag(const std::string& k) const {
    const auto& s = str(k);
    if (s == "true" || s == "1" || s == "yes") return true;
    if (s == "false" || s == "0" || s == "no") return false;
    throw UsageError("parameter '" + k + "': expected true/false, got " + s);
  }
  std::string choice(const std::string& k, std::initializer_list<const char*> options) const {
    const auto& s = str(k);
    std::string all;
    for (const char* o : options) {
      if (s == o) return s;
      all += (all.empty() ? "" : "|") + std::string(o);
    }
    throw UsageError("parameter '" + k + "' must be one of " + all + ", got " + s);
  }
  fs::path file(const std::string& k) const {
    fs::path path = str(k);
    if (path.is_relative() && !cfg.base_dir.empty()) path = cfg.base_dir / path;
    if (!fs::is_regular_file(path)) throw UsageError("parameter '" + k + "': no such file: " + path.string());
    return path;
  }
  json load(const std::string& k) const { return io::read_json_file(file(k)); }
};

template <class F>
auto as_usage(F&& f) -> decltype(f()) {
  try {
    return f();
  } catch (const UnknownIdError& e) {
    throw UsageError(e.what());
  } catch (const PreconditionError& e) {
    throw UsageError(e.what());
  }
}

// --- loaders --------------------------------------------------------------------

DoubleGroupoid load_double(const Args& a) {
  if (a.has("fixture") == a.has("file")) throw UsageError("give exactly one of 'file' and 'fixture'");
  if (a.has("fixture")) return as_usage([&] { return samples::double_fixture(a.str("fixture")); });
  return io::double_from_json(a.load("file"));
}

std::string double_label(const Args& a) { return a.has("fixture") ? a.str("fixture") : a.str("file"); }

DoubleHaarSystem load_dhaar(const Args& a, const DoubleGroupoid& dg) {
  if (!a.has("dhaar")) return DoubleHaarSystem::counting(dg);
  return io::double_haar_from_json(dg, a.load("dhaar"));
}

cg::GroupFixture load_group(const Args& a) {
  const auto& g = a.str("group");
  if (g.size() > 5 && g.ends_with(".json")) return cg::fixture_from_json(a.load("group"));
  return as_usage([&] { return cg::fixture_by_name(g); });
}

std::vector<const cg::UnitaryRep*> select_reps(const cg::GroupFixture& f, const std::string& which) {
  std::vector<const cg::UnitaryRep*> out;
  if (which == "all") {
    for (const auto& r : f.irreps) out.push_back(&r);
  } else {
    out.push_back(as_usage([&] { return &f.rep(which); }));
  }
  return out;
}

sg::CentralEmbedding load_embedding(const Args& a, const cg::GroupFixture& f) {
  const auto& k = a.str("k");
  if (k == "center") return sg::CentralEmbedding::center(f.group);
  if (k == "trivial") return sg::CentralEmbedding::trivial(f.group);
  std::vector<std::string> names;
  std::stringstream ss(k);
  for (std::string item; std::getline(ss, item, ',');) names.push_back(item);
  return as_usage([&] { return sg::CentralEmbedding::subgroup(f.group, names); });
}

// --- report helpers -------------------------------------------------------------

struct Tally {
  std::size_t axioms = 0, failing = 0, structural = 0, cases = 0, failures = 0;
};

void count_axioms(const ValidationReport& rep, Tally& t) {
  t.structural += rep.structural_errors.size();
  for (const auto& ax : rep.axioms) {
    ++t.axioms;
    t.cases += ax.cases;
    t.failures += ax.failures;
    if (!ax.passed()) ++t.failing;
  }
  for (const auto& c : rep.components) count_axioms(c, t);
}

void from_validation(const ValidationReport& rep, Report& out) {
  Tally t;
  count_axioms(rep, t);
  out.outcome = rep.ok() ? Verdict::pass : Verdict::fail;
  out.summary = std::to_string(t.cases) + " cases over " + std::to_string(t.axioms) + " axioms, " +
                std::to_string(t.failures) + " failures";
  if (t.failing) out.summary += " in " + std::to_string(t.failing) + " axioms";
  if (t.structural) out.summary += ", " + std::to_string(t.structural) + " structural errors";
  out.details["report"] = io::to_json(rep);
}

json square_ids(const DoubleGroupoid& dg, const CompatViolation& v) {
  return json::array({dg.name(v.a), dg.name(v.b), dg.name(v.c), dg.name(v.d)});
}

json scan_details(const DoubleGroupoid& dg, const CompatReport& scan, std::size_t cap) {
  json j;
  j["checked"] = scan.checked;
  j["violations"] = scan.violation_count;
  j["products_equal"] = scan.structural_products_equal;
  j["counting_measures"] = scan.counting_measures;
  j["audit"] = scan.audit;
  json w = json::array();
  for (std::size_t i = 0; i < scan.violations.size() && i < cap; ++i) {
    const auto& v = scan.violations[i];
    w.push_back({{"squares", square_ids(dg, v)}, {"lhs", io::to_json(v.lhs)}, {"rhs", io::to_json(v.rhs)}});
  }
  j["witnesses"] = w;
  return j;
}

std::vector<std::pair<cg::GroupFunction, cg::GroupFunction>> make_inputs(const Args& a, const cg::GroupModel& m,
                                                                        std::int64_t max_freq) {
  std::mt19937_64 rng(a.cfg.seed);
  const auto one = cg::GroupFunction::constant(m, 1.0);
  auto pick = [&](const std::string& k) {
    return a.choice(k, {"one", "random"}) == "one" ? one : cg::random_function(m, rng, max_freq);
  };
  std::vector<std::pair<cg::GroupFunction, cg::GroupFunction>> out;
  auto u = pick("u");
  auto v = pick("v");
  out.emplace_back(std::move(u), std::move(v));
  const auto n = a.integer("random-pairs", 0, 100000);
  for (std::int64_t i = 0; i < n; ++i) {
    auto x = cg::random_function(m, rng, max_freq);
    auto y = cg::random_function(m, rng, max_freq);
    out.emplace_back(std::move(x), std::move(y));
  }
  return out;
}

// --- check bodies ------------------------------------------------------------

void validate_groupoid_body(const Params& p, const Config& cfg, Report& r) {
  Args a{p, cfg};
  from_validation(validate_structure(io::category_data_from_json(a.load("file"))), r);
}

void validate_haar_body(const Params& p, const Config& cfg, Report& r) {
  Args a{p, cfg};
  const auto gpd = io::groupoid_from_json(a.load("file"));
  const auto h = a.has("haar") ? io::haar_from_json(gpd, a.load("haar")) : counting_haar(gpd);
  from_validation(validate_haar(gpd, h), r);
}

void validate_double_body(const Params& p, const Config& cfg, Report& r) {
  Args a{p, cfg};
  const auto dg = load_double(a);
  from_validation(validate_double(dg, cfg.audit), r);
  r.details["squares"] = dg.square_count();
  r.details["strict_2group"] = dg.is_strict_2group();
}

void double_target_body(const Params& p, const Config& cfg, Report& r) {
  Args a{p, cfg};
  from_validation(check_double_target_equivariance(load_double(a)), r);
}

void haar_induce_body(const Params& p, const Config& cfg, Report& r) {
  Args a{p, cfg};
  const auto dg = load_double(a);
  const auto dh = load_dhaar(a, dg);
  const auto input = validate_double_haar(dg, dh);
  if (!input.ok()) {
    from_validation(input, r);
    r.summary = "input is not a double Haar system: " + r.summary;
    return;
  }
  const auto ind = induce_haar(dg, dh);
  ValidationReport all;
  all.subject = "haar-induce";
  all.components = {ind.circ_report, ind.bullet_report, ind.diagram};
  from_validation(all, r);
  r.details["circ"] = io::to_json(dg.vertical(), ind.circ);
  r.details["bullet"] = io::to_json(dg.horizontal(), ind.bullet);
  r.details["circ_counting"] = is_counting(ind.circ);
  r.details["bullet_counting"] = is_counting(ind.bullet);
}

void pair_matrix_body(const Params& p, const Config& cfg, Report& r) {
  Args a{p, cfg};
  const auto n = a.integer("n", 1, static_cast<std::int64_t>(kPairMatrixMaxN));
  const bool transposed = a.flag("transposed");
  json per = json::object();
  bool all = true;
  for (std::int64_t m = 1; m <= n; ++m) {
    const bool ok = pair_matrix_iso_check(static_cast<std::size_t>(m), transposed);
    per[std::to_string(m)] = ok;
    all = all && ok;
  }
  r.outcome = all ? Verdict::pass : Verdict::fail;
  r.details["per_n"] = per;
  r.summary = std::string("n=1..") + std::to_string(n) + (all ? ": isomorphism holds" : ": isomorphism fails");
}

void convolve_body(const Params& p, const Config& cfg, Report& r) {
  Args a{p, cfg};
  const auto mode = a.choice("mode", {"circ", "bullet"});
  const auto dg = load_double(a);
  const DoubleConvolutions conv(dg, load_dhaar(a, dg));
  const auto u = io::exact_element_from_json(dg.vertical(), a.load("u"));
  const auto v = io::exact_element_from_json(dg.vertical(), a.load("v"));
  const auto w = mode == "circ" ? conv.circ(u, v) : conv.bullet(u, v);
  r.outcome = Verdict::pass;
  r.summary = "product has " + std::to_string(io::to_json(w).size()) + " nonzero coefficients";
  r.details["product"] = io::to_json(w);
}

void compat_scan_body(const Params& p, const Config& cfg, Report& r) {
  Args a{p, cfg};
  const auto dg = load_double(a);
  const auto scan = compatibility_scan(dg, load_dhaar(a, dg), cfg.audit, cfg.jobs);
  r.outcome = scan.violation_count == 0 ? Verdict::pass : Verdict::fail;
  r.details = scan_details(dg, scan, 32);
  r.summary = std::to_string(scan.checked) + " tuples, " + std::to_string(scan.violation_count) + " violations";
}

void compat_fuzz_body(const Params& p, const Config& cfg, Report& r) {
  Args a{p, cfg};
  const auto count = a.integer("count", 0, 10000);
  std::mt19937_64 rng(cfg.seed);
  std::vector<std::pair<std::string, DoubleGroupoid>> cases;
  for (std::int64_t i = 0; i < count; ++i) {
    std::string fam;
    auto dg = samples::random_valid_double(rng, &fam);
    cases.emplace_back("random#" + std::to_string(i) + ":" + fam, std::move(dg));
  }
  if (a.flag("fixtures"))
    for (const auto& name : samples::double_fixture_names()) cases.emplace_back(name, samples::double_fixture(name));

  std::size_t equal = 0, unequal = 0;
  json mismatches = json::array();
  json families = json::object();
  for (const auto& [label, dg] : cases) {
    const auto scan = compatibility_scan(dg, DoubleHaarSystem::counting(dg), cfg.audit, cfg.jobs);
    const bool structural = scan.structural_products_equal;
    const auto fam = label.substr(label.find(':') == std::string::npos ? 0 : label.find(':') + 1);
    families[fam] = families.value(fam, 0) + 1;
    (structural ? equal : unequal) += 1;
    const bool agrees = scan.verdict_products_equal == structural && (structural || !scan.violations.empty());
    if (!agrees) mismatches.push_back(label);
  }
  r.outcome = mismatches.empty() ? Verdict::pass : Verdict::fail;
  r.details = {{"cases", cases.size()},     {"products_equal", equal}, {"products_differ", unequal},
               {"mismatches", mismatches}, {"families", families}};
  r.summary = std::to_string(cases.size()) + " double groupoids, " + std::to_string(mismatches.size()) +
              " verdict/structure mismatches";
}

void nctorus_body(const Params& p, const Config& cfg, Report& r) {
  Args a{p, cfg};
  const auto which = a.choice("check", {"closed-vs-oracle", "compat-table"});
  const double rot = a.real("r");
  const auto range = a.integer("range", 0, 64);
  if (which == "closed-vs-oracle") {
    const auto res = nct::closed_vs_oracle(range, rot, cfg.tolerance);
    r.outcome = res.passed(cfg.tolerance) ? Verdict::pass : Verdict::fail;
    json f = json::array();
    for (std::size_t i = 0; i < res.failures.size() && i < 32; ++i) f.push_back(res.failures[i]);
    r.details = {{"pairs", res.pairs},
                 {"max_error_circ", res.max_error_circ},
                 {"max_error_bullet", res.max_error_bullet},
                 {"failures", f}};
    r.summary = std::to_string(res.pairs) + " basis pairs";
    return;
  }
  const auto levels = a.integer("level-range", 0, 8);
  const auto t = nct::compat_table(levels, range, rot, cfg.tolerance);
  r.outcome = t.reproduces_claims() ? Verdict::pass : Verdict::fail;
  json ex = json::array();
  for (const auto& e : t.unequal_examples) ex.push_back(e);
  r.details = {{"same_frequency", {{"total", t.same_freq_total}, {"equal", t.same_freq_equal}}},
               {"sum_differs", {{"total", t.sum_differs_total}, {"both_zero", t.sum_differs_zero}}},
               {"other", {{"total", t.other_total}, {"unequal", t.other_unequal}}},
               {"unequal_examples", ex},
               {"witness_0_1_0_0_0_0_0_1_unequal", t.derived_witness_unequal}};
  r.summary = std::to_string(t.same_freq_total + t.sum_differs_total + t.other_total) + " tuples";
}

void validate_rep_body(const Params& p, const Config& cfg, Report& r) {
  Args a{p, cfg};
  const auto f = load_group(a);
  ValidationReport all;
  all.subject = "representations of " + f.group.name();
  for (const auto* pi : select_reps(f, a.str("pi"))) {
    auto rep = cg::validate_rep(*pi, cfg.tolerance);
    rep.subject = pi->name;
    all.components.push_back(std::move(rep));
  }
  from_validation(all, r);
}

void schur_body(const Params& p, const Config& cfg, Report& r) {
  Args a{p, cfg};
  const auto f = load_group(a);
  ValidationReport all;
  all.subject = "schur on " + f.group.name();
  for (const auto* pi : select_reps(f, a.str("pi"))) {
    auto rep = cg::schur_check(*pi, f.irreps, cfg.tolerance);
    rep.subject = pi->name;
    all.components.push_back(std::move(rep));
  }
  from_validation(all, r);
}

template <class Fn>
void identity_sweep(const Params& p, const Config& cfg, Report& r, Fn check) {
  Args a{p, cfg};
  const auto f = load_group(a);
  const auto inputs = make_inputs(a, cg::GroupModel::finite(f.group), 3);
  std::size_t cases = 0, failures = 0;
  double worst = 0.0;
  json witnesses = json::array();
  for (const auto* pi : select_reps(f, a.str("pi")))
    for (std::size_t n = 0; n < inputs.size(); ++n)
      for (std::size_t i = 0; i < pi->dim; ++i)
        for (std::size_t k = 0; k < pi->dim; ++k) {
          const auto res = check(*pi, inputs[n].first, inputs[n].second, i, k, cfg.tolerance);
          ++cases;
          worst = std::max(worst, res.gap);
          if (!res.equal) {
            ++failures;
            if (witnesses.size() < 32)
              witnesses.push_back({{"rep", pi->name}, {"input", n}, {"i", i}, {"k", k}, {"gap", res.gap}});
          }
        }
  r.outcome = failures == 0 ? Verdict::pass : Verdict::fail;
  r.details = {{"cases", cases}, {"failures", failures}, {"max_gap", worst}, {"witnesses", witnesses}};
  r.summary = std::to_string(cases) + " cases, " + std::to_string(failures) + " failing";
}

void naive_compat_body(const Params& p, const Config& cfg, Report& r) {
  Args a{p, cfg};
  const auto f = load_group(a);
  const auto& sigma = *select_reps(f, a.str("sigma")).at(0);
  const auto& pi = *select_reps(f, a.str("pi")).at(0);
  const double gap = a.real("gap");
  if (!(gap > 0)) throw UsageError("parameter 'gap' must be positive");
  const auto ws = cg::naive_compat_search(sigma, pi, gap, cfg.jobs);
  double worst = 0.0;
  json w = json::array();
  for (const auto& x : ws) {
    worst = std::max(worst, x.gap);
    if (w.size() < 32)
      w.push_back({{"abc", {x.a, x.b, x.c}}, {"ijk", {x.i, x.j, x.k}}, {"gap", x.gap}});
  }
  r.outcome = ws.empty() ? Verdict::pass : Verdict::fail;
  r.details = {{"witness_count", ws.size()},
               {"max_gap", worst},
               {"witnesses", w},
               {"tensor_irreducible", cg::is_irreducible(cg::tensor_rep(sigma, pi))}};
  r.summary = ws.empty() ? "naive law holds on every index tuple"
                         : std::to_string(ws.size()) + " index tuples violate the naive law";
}

void theorem_main_body(const Params& p, const Config& cfg, Report& r) {
  Args a{p, cfg};
  const bool all_indices = a.flag("all-indices");
  if (a.str("group") == "circle") {
    const double rot = a.real("r");
    const auto lr = a.integer("level-range", 0, 16);
    const auto fr = a.integer("freq-range", 0, 64);
    const auto ce = sg::CentralEmbedding::integers(rot, 4 * lr);
    std::vector<cg::UnitaryRep> chars;
    for (std::int64_t m = -fr; m <= fr; ++m) chars.push_back(cg::UnitaryRep::circle_characters("e" + std::to_string(m), {m}));
    sg::TheoremSweep sweep;
    for (const auto& c : chars) sweep.reps.push_back(&c);
    sweep.inputs = make_inputs(a, ce.model(), fr);
    for (std::int64_t l = -lr; l <= lr; ++l) sweep.levels.push_back(l);
    from_validation(sg::main_theorem_sweep(ce, sweep, cfg.tolerance), r);
    r.details["levels"] = sweep.levels;
    return;
  }
  const auto f = load_group(a);
  const auto ce = load_embedding(a, f);
  sg::TheoremSweep sweep;
  sweep.reps = select_reps(f, a.str("pi"));
  sweep.inputs = make_inputs(a, ce.model(), 3);
  sweep.levels = ce.elements();
  ValidationReport rep;
  if (all_indices) {
    rep = sg::main_theorem_sweep(ce, sweep, cfg.tolerance);
  } else {
    rep.subject = "main theorem, i = k = 0";
    auto& ax = rep.add_axiom("main-theorem");
    for (const auto* pi : sweep.reps)
      for (std::size_t n = 0; n < sweep.inputs.size(); ++n)
        for (auto k1 : sweep.levels)
          for (auto k2 : sweep.levels)
            for (auto l1 : sweep.levels)
              for (auto l2 : sweep.levels) {
                ++ax.cases;
                const auto res = sg::main_theorem_check(ce, *pi, sweep.inputs[n].first, sweep.inputs[n].second, k1,
                                                        k2, l1, l2, 0, 0, cfg.tolerance);
                if (!res.equal)
                  ax.fail({{pi->name, std::to_string(n), ce.element_name(k1), ce.element_name(k2),
                            ce.element_name(l1), ce.element_name(l2), "0", "0"},
                           "gap " + std::to_string(res.gap)});
              }
  }
  const auto central = ce.validate();
  if (!central.ok()) rep.notes.emplace_back("K is not central in G");
  from_validation(rep, r);
  json k = json::array();
  for (auto x : ce.elements()) k.push_back(ce.element_name(x));
  r.details["k"] = k;
}

sg::LevelFunction random_level_function(const sg::CentralEmbedding& ce, std::mt19937_64& rng,
                                        const std::vector<sg::KElement>& pool, std::int64_t terms) {
  sg::LevelFunction x(ce.model());
  for (std::int64_t t = 0; t < terms; ++t) x.add(pool[rng() % pool.size()], cg::random_function(ce.model(), rng, 3));
  return x;
}

void sg_generic_body(const Params& p, const Config& cfg, Report& r) {
  Args a{p, cfg};
  const auto count = a.integer("count", 1, 10000);
  const auto terms = a.integer("terms", 1, 16);
  std::optional<sg::CentralEmbedding> ce;
  std::vector<sg::KElement> pool;
  if (a.str("group") == "circle") {
    const auto lr = a.integer("level-range", 0, 16);
    ce = sg::CentralEmbedding::integers(a.real("r"), 2 * lr);
    for (std::int64_t l = -lr; l <= lr; ++l) pool.push_back(l);
  } else {
    const auto f = load_group(a);
    ce = load_embedding(a, f);
    pool = ce->elements();
  }
  std::mt19937_64 rng(cfg.seed);
  double worst_circ = 0.0, worst_bullet = 0.0;
  for (std::int64_t n = 0; n < count; ++n) {
    const auto x = random_level_function(*ce, rng, pool, terms);
    const auto y = random_level_function(*ce, rng, pool, terms);
    worst_circ = std::max(worst_circ, sg::sup_distance(sg::conv_circ(*ce, x, y), sg::generic_conv(*ce, x, y, sg::Mode::circ)));
    worst_bullet =
        std::max(worst_bullet, sg::sup_distance(sg::conv_bullet(*ce, x, y), sg::generic_conv(*ce, x, y, sg::Mode::bullet)));
  }
  const bool ok = worst_circ <= cfg.tolerance && worst_bullet <= cfg.tolerance;
  r.outcome = ok ? Verdict::pass : Verdict::fail;
  r.details = {{"pairs", count}, {"max_error_circ", worst_circ}, {"max_error_bullet", worst_bullet}};
  if (!ce->validate().ok()) r.details["note"] = "K is not central in G";
  r.summary = std::to_string(count) + " random pairs, closed forms vs direct convolution";
}

void torus_bridge_body(const Params& p, const Config& cfg, Report& r) {
  Args a{p, cfg};
  from_validation(sg::torus_bridge_check(a.real("r"), a.integer("range", 0, 32), a.flag("flip-sign"), cfg.tolerance), r);
}

// --- registry -----------------------------------------------------------------

ParamInfo pos(std::string n, std::string h) { return {std::move(n), std::move(h), "", true}; }
ParamInfo opt(std::string n, std::string h, std::string d = "") { return {std::move(n), std::move(h), std::move(d), false}; }

std::vector<ParamInfo> double_params() {
  return {pos("file", "double groupoid JSON file"), opt("fixture", "built-in double groupoid name")};
}

std::vector<CheckInfo> build_registry() {
  std::vector<CheckInfo> reg;
  reg.push_back({"validate-groupoid", "Validate a groupoid structure file (category and inverse axioms)",
                 {pos("file", "structure JSON file")}, validate_groupoid_body});
  reg.push_back({"validate-haar", "Validate a Haar system on a groupoid (counting measure when omitted)",
                 {pos("file", "structure JSON file"), pos("haar", "Haar weights JSON file")}, validate_haar_body});
  {
    auto ps = double_params();
    reg.push_back({"validate-double", "Validate a double groupoid (components, functoriality, interchange, corners)",
                   ps, validate_double_body});
    reg.push_back({"double-target", "Equivariance of the double target under both actions", ps, double_target_body});
    ps.push_back(pos("dhaar", "double Haar JSON file (counting when omitted)"));
    reg.push_back({"haar-induce", "Induce Haar systems for both products and check the integration diagram", ps,
                   haar_induce_body});
    reg.push_back({"compat-scan", "Scan the interchange law of the two convolution products on basis deltas", ps,
                   compat_scan_body});
    ps.push_back(opt("mode", "circ|bullet", "circ"));
    ps.push_back(opt("u", "left factor JSON file"));
    ps.push_back(opt("v", "right factor JSON file"));
    reg.push_back({"convolve", "Convolve two elements with one of the induced products", ps, convolve_body});
  }
  reg.push_back({"pair-matrix", "Pair groupoid convolution against matrix multiplication for sizes 1..n",
                 {opt("n", "largest size", "5"), opt("transposed", "use the transposed map (negative control)", "false")},
                 pair_matrix_body});
  reg.push_back({"compat-fuzz", "Scan verdict against structural product equality on random double groupoids",
                 {opt("count", "number of random double groupoids", "50"),
                  opt("fixtures", "also scan every built-in fixture", "true")},
                 compat_fuzz_body});
  reg.push_back({"nctorus", "Noncommutative torus closed forms and compatibility table",
                 {opt("check", "closed-vs-oracle|compat-table", "closed-vs-oracle"), opt("r", "rotation", "0"),
                  opt("range", "index (frequency) range", "5"), opt("level-range", "level range (compat-table)", "1")},
                 nctorus_body});
  const ParamInfo group = opt("group", "group fixture name or JSON file", "s3");
  reg.push_back({"validate-rep", "Identity, homomorphism and unitarity of representations",
                 {group, opt("pi", "representation name or all", "all")}, validate_rep_body});
  reg.push_back({"schur", "Convolution of matrix coefficients (Schur) and cross-irrep vanishing",
                 {group, opt("pi", "representation name or all", "all")}, schur_body});
  const std::vector<ParamInfo> ident = {group, opt("pi", "representation name or all", "all"),
                                        opt("u", "one|random", "one"), opt("v", "one|random", "one"),
                                        opt("random-pairs", "additional random (u, v) pairs", "100")};
  reg.push_back({"coeff-conv", "Coefficient convolution identity for all (i, k)", ident,
                 [](const Params& p, const Config& c, Report& r) { identity_sweep(p, c, r, cg::coeff_conv_identity_check); }});
  reg.push_back({"weak-compat", "Weak compatibility identity for all (i, k)", ident,
                 [](const Params& p, const Config& c, Report& r) { identity_sweep(p, c, r, cg::weak_compat_check); }});
  reg.push_back({"naive-compat", "Search for violations of the naive compatibility law",
                 {group, opt("sigma", "representation", "rho2"), opt("pi", "representation", "rho2"),
                  opt("gap", "witness threshold", "1e-6")},
                 naive_compat_body});
  reg.push_back({"theorem-main", "Averaged compatibility law on K x G over all levels and indices",
                 {opt("group", "group fixture, JSON file, or circle", "q8"), opt("k", "center|trivial|comma list", "center"),
                  opt("pi", "representation name or all", "all"), opt("u", "one|random", "one"),
                  opt("v", "one|random", "one"), opt("random-pairs", "additional random (u, v) pairs", "0"),
                  opt("all-indices", "all (i, k); false checks i = k = 0 only", "true"),
                  opt("r", "rotation (circle)", "1.4142135623730951"), opt("level-range", "levels (circle)", "4"),
                  opt("freq-range", "character and input frequencies (circle)", "4")},
                 theorem_main_body});
  reg.push_back({"sg-generic", "Closed-form level products against direct convolution on K x G",
                 {opt("group", "group fixture, JSON file, or circle", "q8"), opt("k", "center|trivial|comma list", "center"),
                  opt("count", "random pairs", "20"), opt("terms", "levels per random function", "2"),
                  opt("r", "rotation (circle)", "1.4142135623730951"), opt("level-range", "levels (circle)", "3")},
                 sg_generic_body});
  reg.push_back({"torus-bridge", "Noncommutative torus as the circle case of K x G",
                 {opt("r", "rotation", "1.4142135623730951"), opt("range", "index range", "3"),
                  opt("flip-sign", "rotate by -r on the K x G side (negative control)", "false")},
                 torus_bridge_body});
  std::sort(reg.begin(), reg.end(), [](const CheckInfo& x, const CheckInfo& y) { return x.name < y.name; });
  return reg;
}

Report error_report(const CheckSpec& spec, const Config& cfg, const std::string& msg) {
  Report r;
  r.check = spec.name;
  r.expect = spec.expect;
  r.verdict = r.outcome = Verdict::error;
  r.summary = msg;
  r.details["error"] = msg;
  r.config = {{"seed", cfg.seed}, {"tolerance", spec.tolerance.value_or(cfg.tolerance)}, {"audit", cfg.audit},
              {"params", spec.params}};
  return r;
}

}  // namespace

const std::vector<CheckInfo>& registry() {
  static const std::vector<CheckInfo> reg = build_registry();
  return reg;
}

const CheckInfo* find_check(std::string_view name) {
  for (const auto& c : registry())
    if (c.name == name) return &c;
  return nullptr;
}

Report run(const CheckSpec& spec, const Config& cfg_in) {
  const CheckInfo* info = find_check(spec.name);
  if (!info) throw UsageError("unknown check '" + spec.name + "'");
  Config cfg = cfg_in;
  if (spec.tolerance) cfg.tolerance = *spec.tolerance;
  if (!(cfg.tolerance > 0) || !std::isfinite(cfg.tolerance)) throw UsageError("tolerance must be positive");
  if (spec.expect && *spec.expect != "pass" && *spec.expect != "fail")
    throw UsageError("expect must be pass or fail, got " + *spec.expect);

  Params params;
  for (const auto& pi : info->params) params[pi.name] = pi.default_value;
  for (const auto& [k, v] : spec.params) {
    if (!params.count(k)) throw UsageError("check '" + spec.name + "' has no parameter '" + k + "'");
    params[k] = v;
  }

  Report r;
  r.check = spec.name;
  r.expect = spec.expect;
  json echo = json::object();
  for (const auto& [k, v] : params)
    if (!v.empty()) echo[k] = v;
  r.config = {{"seed", cfg.seed}, {"tolerance", cfg.tolerance}, {"audit", cfg.audit}, {"params", echo}};
  const auto start = std::chrono::steady_clock::now();
  try {
    info->body(params, cfg, r);
  } catch (const UsageError&) {
    throw;
  } catch (const ParseError&) {
    throw;
  } catch (const Error& e) {
    r.outcome = Verdict::error;
    r.summary = e.what();
    r.details["error"] = e.what();
  }
  if (cfg.timings)
    r.elapsed_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
  if (r.outcome == Verdict::error)
    r.verdict = Verdict::error;
  else
    r.verdict = r.outcome == (spec.expect.value_or("pass") == "pass" ? Verdict::pass : Verdict::fail) ? Verdict::pass
                                                                                                       : Verdict::fail;
  return r;
}

std::vector<CheckSpec> parse_manifest(const json& j) {
  if (!j.is_array()) throw ParseError("manifest must be a JSON array of checks");
  std::vector<CheckSpec> out;
  for (std::size_t i = 0; i < j.size(); ++i) {
    const auto& e = j[i];
    const std::string where = "manifest entry " + std::to_string(i);
    if (!e.is_object()) throw ParseError(where + ": expected an object");
    for (const auto& [k, v] : e.items())
      if (k != "name" && k != "params" && k != "tolerance" && k != "expect")
        throw ParseError(where + ": unknown field '" + k + "'");
    if (!e.contains("name") || !e["name"].is_string()) throw ParseError(where + ": missing string field 'name'");
    CheckSpec s;
    s.name = e["name"].get<std::string>();
    if (e.contains("params")) {
      if (!e["params"].is_object()) throw ParseError(where + ": 'params' must be an object");
      for (const auto& [k, v] : e["params"].items()) {
        if (v.is_string())
          s.params[k] = v.get<std::string>();
        else if (v.is_boolean() || v.is_number())
          s.params[k] = v.is_number_float() ? [&] {
            std::ostringstream os;
            os.precision(17);
            os << v.get<double>();
            return os.str();
          }()
                                            : v.dump();
        else
          throw ParseError(where + ": parameter '" + k + "' must be a string, number or boolean");
      }
    }
    if (e.contains("tolerance")) {
      if (!e["tolerance"].is_number()) throw ParseError(where + ": 'tolerance' must be a number");
      s.tolerance = e["tolerance"].get<double>();
    }
    if (e.contains("expect")) {
      if (!e["expect"].is_string()) throw ParseError(where + ": 'expect' must be \"pass\" or \"fail\"");
      s.expect = e["expect"].get<std::string>();
    }
    out.push_back(std::move(s));
  }
  return out;
}

std::vector<CheckSpec> load_manifest(const fs::path& path) { return parse_manifest(io::read_json_file(path)); }

SuiteResult run_suite(const std::vector<CheckSpec>& specs, const Config& cfg) {
  SuiteResult res;
  res.reports.resize(specs.size());
  Config inner = cfg;
  inner.jobs = 1;
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i; (i = next.fetch_add(1)) < specs.size();) {
      try {
        res.reports[i] = run(specs[i], inner);
      } catch (const std::exception& e) {
        res.reports[i] = error_report(specs[i], cfg, e.what());
      }
    }
  };
  const unsigned n = std::max(1u, std::min<unsigned>(cfg.jobs, static_cast<unsigned>(specs.size())));
  std::vector<std::thread> pool;
  for (unsigned t = 1; t < n; ++t) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();
  for (const auto& r : res.reports) {
    if (r.verdict == Verdict::pass) ++res.passed;
    else if (r.verdict == Verdict::fail) ++res.failed;
    else ++res.errors;
  }
  return res;
}

std::vector<std::string> export_fixtures(const fs::path& dir) {
  fs::create_directories(dir);
  std::vector<std::string> written;
  auto write = [&](const std::string& name, const json& j) {
    std::ofstream out(dir / name);
    if (!out) throw Error("cannot write " + (dir / name).string());
    out << j.dump(2) << '\n';
    written.push_back(name);
  };
  for (const auto& name : samples::double_fixture_names()) write(name + ".json", io::to_json(samples::double_fixture(name)));
  for (const char* g : {"z2", "z3", "z4", "z8", "s3", "q8", "s3xs3"})
    write(std::string("group-") + g + ".json", cg::to_json(cg::fixture_by_name(g)));
  std::sort(written.begin(), written.end());
  return written;
}

}  // namespace dgpd::cli
