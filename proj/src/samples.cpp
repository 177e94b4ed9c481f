#include "dgpd/samples.hpp"

#include <algorithm>
#include <map>
#include <numeric>

#include "dgpd/compact.hpp"
#include "dgpd/error.hpp"
#include "dgpd/structure_io.hpp"

namespace dgpd::samples {

Groupoid product_cyclic(std::size_t a, std::size_t b) {
  std::vector<std::string> names;
  for (std::size_t x = 0; x < a; ++x)
    for (std::size_t y = 0; y < b; ++y) names.push_back(std::to_string(x) + "." + std::to_string(y));
  return make_group(names, [a, b](std::size_t i, std::size_t j) { return ((i / b + j / b) % a) * b + (i % b + j % b) % b; });
}

Groupoid dihedral(std::size_t n) {
  std::vector<std::string> names;
  for (std::size_t f = 0; f < 2; ++f)
    for (std::size_t i = 0; i < n; ++i) names.push_back((f ? "s" : "r") + std::to_string(i));
  return make_group(names, [n](std::size_t x, std::size_t y) {
    const std::size_t fx = x / n, ix = x % n, fy = y / n, iy = y % n;
    // r^a s^f · r^b s^g = r^(a + (-1)^f b) s^(f+g)
    return ((fx + fy) % 2) * n + (ix + (fx ? n - iy : iy)) % n;
  });
}

Groupoid random_group(std::mt19937_64& rng) {
  switch (rng() % 7) {
    case 0: return cyclic_group(1 + rng() % 6);
    case 1: return product_cyclic(2, 2);
    case 2: return product_cyclic(2, 1 + rng() % 3);
    case 3: return cg::s3_fixture().group.table();
    case 4: return cg::q8_fixture().group.table();
    case 5: return dihedral(2 + rng() % 3);
    default: return cyclic_group(2 + rng() % 4);
  }
}

DoubleGroupoid relabel(const DoubleGroupoid& dg, std::mt19937_64& rng) {
  auto j = io::to_json(dg);
  std::vector<std::string> ids;
  for (const char* k : {"vertical", "horizontal", "sideK", "sideH"}) {
    for (const auto& o : j[k]["objects"]) ids.push_back(o.get<std::string>());
    for (const auto& a : j[k]["arrows"]) ids.push_back(a["id"].get<std::string>());
  }
  std::sort(ids.begin(), ids.end());
  ids.erase(std::unique(ids.begin(), ids.end()), ids.end());
  std::vector<std::size_t> perm(ids.size());
  std::iota(perm.begin(), perm.end(), 0);
  std::shuffle(perm.begin(), perm.end(), rng);
  std::map<std::string, std::string> rename;
  for (std::size_t i = 0; i < ids.size(); ++i) rename[ids[i]] = "x" + std::to_string(perm[i]);
  auto fix = [&](const io::json& s) {
    CategoryData d = io::category_data_from_json(s);
    for (auto& o : d.objects) o = rename.at(o);
    for (auto& a : d.arrows) a = {rename.at(a.id), rename.at(a.source), rename.at(a.target)};
    std::map<std::string, std::string> units;
    for (auto& [k, v] : d.units) units[rename.at(k)] = rename.at(v);
    d.units = units;
    for (auto& c : d.compose)
      for (auto& x : c) x = rename.at(x);
    std::map<std::string, std::string> inv;
    for (auto& [k, v] : *d.inverse) inv[rename.at(k)] = rename.at(v);
    d.inverse = inv;
    std::shuffle(d.arrows.begin(), d.arrows.end(), rng);
    std::shuffle(d.compose.begin(), d.compose.end(), rng);
    return Groupoid::from_data(d);
  };
  return DoubleGroupoid::make(fix(j["vertical"]), fix(j["horizontal"]), fix(j["sideK"]), fix(j["sideH"]));
}

namespace {

std::vector<std::string> center_names(const Groupoid& g) {
  std::vector<std::string> z;
  for (std::uint32_t a = 0; a < g.arrow_count(); ++a) {
    bool central = true;
    for (std::uint32_t b = 0; b < g.arrow_count() && central; ++b)
      central = g.compose(Arrow{a}, Arrow{b}) == g.compose(Arrow{b}, Arrow{a});
    if (central) z.push_back(g.name(Arrow{a}));
  }
  return z;
}

DoubleGroupoid reduction_action(std::size_t m, std::size_t n) {
  // Z/m acting on Z/n through k ↦ k mod n (n | m) or k ↦ k·(n/m) (m | n)
  auto km = cyclic_group(m);
  auto gn = cyclic_group(n);
  std::vector<std::size_t> phi(m);
  for (std::size_t k = 0; k < m; ++k) {
    const std::size_t img = m >= n ? k % n : k * (n / m);
    phi[km.arrow(std::to_string(k)).index] = gn.arrow(std::to_string(img)).index;
  }
  return action_double(km, gn, phi);
}

}  // namespace

DoubleGroupoid random_valid_double(std::mt19937_64& rng, std::string* family) {
  const auto pick = rng() % 5;
  auto set = [&](const char* f) {
    if (family) *family = f;
  };
  if (pick == 0) {
    set("from_group");
    return relabel(from_group(random_group(rng)), rng);
  }
  if (pick == 1) {
    set("central_action");
    auto g = random_group(rng);
    auto z = center_names(g);
    // subgroup of the centre generated by one central element
    Arrow x = g.arrow(z[rng() % z.size()]);
    std::vector<std::string> sub{g.name(g.unit(Obj{0}))};
    for (Arrow p = x; p != g.unit(Obj{0}); p = g.compose(p, x)) sub.push_back(g.name(p));
    return relabel(central_action_double(g, sub), rng);
  }
  if (pick == 2) {
    set("action_hom");
    const std::size_t m = 1 + rng() % 3;
    return relabel(reduction_action(m, m * (1 + rng() % 3)), rng);
  }
  if (pick == 3) {
    set("diagonal");
    auto g = rng() % 2 ? cyclic_group(1 + rng() % 6) : product_cyclic(2, 1 + rng() % 2);
    return relabel(diagonal_double(g), rng);
  }
  set("coarse");
  std::vector<std::string> pts{"a", "b"};
  pts.resize(1 + rng() % 2);
  return relabel(coarse_double(pts), rng);
}

std::vector<std::string> double_fixture_names() {
  return {"coarse-2", "diagonal-z3", "from-group-z2", "from-group-z3", "q8-center", "s3-a3", "strict-2group", "z2-in-z4"};
}

DoubleGroupoid double_fixture(std::string_view name) {
  if (name == "from-group-z2") return from_group(cyclic_group(2));
  if (name == "from-group-z3") return from_group(cyclic_group(3));
  if (name == "z2-in-z4") return central_action_double(cyclic_group(4), {"0", "2"});
  if (name == "q8-center") return central_action_double(cg::q8_fixture().group.table(), {"1", "-1"});
  if (name == "s3-a3") return central_action_double(cg::s3_fixture().group.table(), {"p012", "p120", "p201"});
  if (name == "strict-2group") return reduction_action(4, 2);
  if (name == "diagonal-z3") return diagonal_double(cyclic_group(3));
  if (name == "coarse-2") return coarse_double({"a", "b"});
  throw UnknownIdError("unknown double groupoid fixture \"" + std::string(name) + "\"");
}

}  // namespace dgpd::samples
