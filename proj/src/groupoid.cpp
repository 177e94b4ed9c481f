#include "dgpd/groupoid.hpp"

#include <algorithm>
#include <set>

#include "dgpd/error.hpp"

namespace dgpd {

namespace {

std::string join_errors(const std::vector<std::string>& errs) {
  std::string out;
  for (const auto& e : errs) {
    if (!out.empty()) out += "; ";
    out += e;
  }
  return out;
}

std::unordered_map<std::string, std::uint32_t> index_of(const NameTable& names) {
  std::unordered_map<std::string, std::uint32_t> idx;
  for (std::uint32_t i = 0; i < names.size(); ++i) idx.emplace(names[i], i);
  return idx;
}

std::vector<std::string> inverse_errors(const CategoryData& data) {
  std::vector<std::string> errs;
  if (!data.inverse) {
    errs.push_back("inverse table absent");
    return errs;
  }
  std::set<std::string> arrows;
  for (const auto& a : data.arrows) arrows.insert(a.id);
  for (const auto& [a, b] : *data.inverse) {
    if (!arrows.count(a)) errs.push_back("inverse entry for unknown arrow \"" + a + "\"");
    if (!arrows.count(b)) errs.push_back("inverse of \"" + a + "\" is unknown arrow \"" + b + "\"");
  }
  for (const auto& a : arrows)
    if (!data.inverse->count(a)) errs.push_back("arrow \"" + a + "\" has no inverse entry");
  return errs;
}

}  // namespace

std::string pair_label(std::string_view a, std::string_view b) {
  std::string s = "(";
  s += a;
  s += ',';
  s += b;
  s += ')';
  return s;
}

std::vector<std::string> Category::structure_errors(const CategoryData& data) {
  std::vector<std::string> errs;
  std::set<std::string> objects;
  for (const auto& o : data.objects)
    if (!objects.insert(o).second) errs.push_back("duplicate object id \"" + o + "\"");

  std::map<std::string, std::pair<std::string, std::string>> arrows;
  for (const auto& a : data.arrows) {
    if (!arrows.emplace(a.id, std::pair{a.source, a.target}).second)
      errs.push_back("duplicate arrow id \"" + a.id + "\"");
    if (!objects.count(a.source))
      errs.push_back("arrow \"" + a.id + "\" has unknown source \"" + a.source + "\"");
    if (!objects.count(a.target))
      errs.push_back("arrow \"" + a.id + "\" has unknown target \"" + a.target + "\"");
  }

  for (const auto& [o, a] : data.units) {
    if (!objects.count(o)) errs.push_back("unit declared for unknown object \"" + o + "\"");
    if (!arrows.count(a)) errs.push_back("unit of \"" + o + "\" is unknown arrow \"" + a + "\"");
  }
  for (const auto& o : objects)
    if (!data.units.count(o)) errs.push_back("object \"" + o + "\" has no unit");

  std::map<std::pair<std::string, std::string>, std::string> seen;
  for (const auto& [a, b, ab] : data.compose) {
    auto ia = arrows.find(a);
    auto ib = arrows.find(b);
    bool ok = true;
    if (ia == arrows.end()) errs.push_back("compose entry uses unknown arrow \"" + a + "\""), ok = false;
    if (ib == arrows.end()) errs.push_back("compose entry uses unknown arrow \"" + b + "\""), ok = false;
    if (!arrows.count(ab))
      errs.push_back("compose entry (" + a + ", " + b + ") yields unknown arrow \"" + ab + "\""), ok = false;
    if (!ok) continue;
    if (ia->second.first != ib->second.second)
      errs.push_back("compose entry lists non-composable pair (" + a + ", " + b + "): source(" + a +
                     ")=" + ia->second.first + " but target(" + b + ")=" + ib->second.second);
    auto [it, fresh] = seen.emplace(std::pair{a, b}, ab);
    if (!fresh && it->second != ab)
      errs.push_back("conflicting compose entries for (" + a + ", " + b + ")");
  }
  return errs;
}

Category Category::from_data(const CategoryData& data) {
  auto errs = structure_errors(data);
  if (!errs.empty()) throw StructureError(join_errors(errs));

  Category c;
  c.object_names_ = data.objects;
  std::sort(c.object_names_.begin(), c.object_names_.end());
  NameTable arrow_names;
  for (const auto& a : data.arrows) arrow_names.push_back(a.id);
  std::sort(arrow_names.begin(), arrow_names.end());
  c.object_index_ = index_of(c.object_names_);
  c.arrow_index_ = index_of(arrow_names);
  c.arrow_names_ = std::make_shared<const NameTable>(std::move(arrow_names));

  const auto n = c.arrow_count();
  c.source_.resize(n);
  c.target_.resize(n);
  for (const auto& a : data.arrows) {
    auto i = c.arrow_index_.at(a.id);
    c.source_[i] = Obj{c.object_index_.at(a.source)};
    c.target_[i] = Obj{c.object_index_.at(a.target)};
  }
  c.unit_.resize(c.object_count());
  for (const auto& [o, a] : data.units) c.unit_[c.object_index_.at(o)] = Arrow{c.arrow_index_.at(a)};
  c.compose_.assign(n * n, -1);
  for (const auto& [a, b, ab] : data.compose)
    c.compose_[c.arrow_index_.at(a) * n + c.arrow_index_.at(b)] =
        static_cast<std::int32_t>(c.arrow_index_.at(ab));
  c.build_fibers();
  return c;
}

void Category::build_fibers() {
  target_fibers_.assign(object_count(), {});
  source_fibers_.assign(object_count(), {});
  for (std::uint32_t i = 0; i < arrow_count(); ++i) {
    target_fibers_[target_[i].index].push_back(Arrow{i});
    source_fibers_[source_[i].index].push_back(Arrow{i});
  }
}

Obj Category::object(std::string_view id) const {
  if (auto o = find_object(id)) return *o;
  throw UnknownIdError("unknown object \"" + std::string(id) + "\"");
}

Arrow Category::arrow(std::string_view id) const {
  if (auto a = find_arrow(id)) return *a;
  throw UnknownIdError("unknown arrow \"" + std::string(id) + "\"");
}

std::optional<Arrow> Category::find_arrow(std::string_view id) const {
  auto it = arrow_index_.find(std::string(id));
  if (it == arrow_index_.end()) return std::nullopt;
  return Arrow{it->second};
}

std::optional<Obj> Category::find_object(std::string_view id) const {
  auto it = object_index_.find(std::string(id));
  if (it == object_index_.end()) return std::nullopt;
  return Obj{it->second};
}

std::optional<Arrow> Category::try_compose(Arrow a, Arrow b) const {
  if (!composable(a, b)) return std::nullopt;
  auto v = compose_[a.index * arrow_count() + b.index];
  if (v < 0) return std::nullopt;
  return Arrow{static_cast<std::uint32_t>(v)};
}

Arrow Category::compose(Arrow a, Arrow b) const {
  if (!composable(a, b))
    throw CompositionError("arrows " + name(a) + " and " + name(b) + " are not composable: source(" +
                           name(a) + ")=" + name(source(a)) + " but target(" + name(b) +
                           ")=" + name(target(b)));
  auto r = try_compose(a, b);
  if (!r) throw CompositionError("composition table has no entry for (" + name(a) + ", " + name(b) + ")");
  return *r;
}

CategoryData Category::to_data() const {
  CategoryData d;
  d.objects = object_names_;
  for (std::uint32_t i = 0; i < arrow_count(); ++i)
    d.arrows.push_back({name(Arrow{i}), name(source_[i]), name(target_[i])});
  for (std::uint32_t x = 0; x < object_count(); ++x) d.units[object_names_[x]] = name(unit_[x]);
  const auto n = arrow_count();
  for (std::uint32_t a = 0; a < n; ++a)
    for (std::uint32_t b = 0; b < n; ++b)
      if (auto v = compose_[a * n + b]; v >= 0)
        d.compose.push_back({name(Arrow{a}), name(Arrow{b}), name(Arrow{static_cast<std::uint32_t>(v)})});
  return d;
}

void Category::share_arrow_names(const std::shared_ptr<const NameTable>& names) {
  if (*names != *arrow_names_) throw StructureError("arrow id sets differ; cannot share context");
  arrow_names_ = names;
}

Groupoid Groupoid::from_data(const CategoryData& data) {
  auto errs = Category::structure_errors(data);
  auto inv_errs = inverse_errors(data);
  errs.insert(errs.end(), inv_errs.begin(), inv_errs.end());
  if (!errs.empty()) throw StructureError(join_errors(errs));
  Groupoid g;
  static_cast<Category&>(g) = Category::from_data(data);
  g.inverse_.resize(g.arrow_count());
  for (const auto& [a, b] : *data.inverse) g.inverse_[g.arrow(a).index] = g.arrow(b);
  return g;
}

CategoryData Groupoid::to_data() const {
  CategoryData d = Category::to_data();
  d.inverse.emplace();
  for (std::uint32_t i = 0; i < arrow_count(); ++i) (*d.inverse)[name(Arrow{i})] = name(inverse_[i]);
  return d;
}

// --- validation -------------------------------------------------------------

namespace {

void scan_category_axioms(const Category& c, ValidationReport& rep) {
  const auto n = static_cast<std::uint32_t>(c.arrow_count());

  auto& total = rep.add_axiom("composition-total");
  auto& st = rep.add_axiom("source-target-of-composite");
  for (std::uint32_t i = 0; i < n; ++i) {
    Arrow a{i};
    for (Arrow b : c.target_fiber(c.source(a))) {
      ++total.cases;
      auto ab = c.try_compose(a, b);
      if (!ab) {
        total.fail({{c.name(a), c.name(b)}, "composable pair has no composition entry"});
        continue;
      }
      ++st.cases;
      if (c.target(*ab) != c.target(a) || c.source(*ab) != c.source(b))
        st.fail({{c.name(a), c.name(b)}, "composite " + c.name(*ab) + " has wrong source or target"});
    }
  }

  auto& assoc = rep.add_axiom("associativity");
  for (std::uint32_t i = 0; i < n; ++i) {
    Arrow a{i};
    for (Arrow b : c.target_fiber(c.source(a))) {
      auto ab = c.try_compose(a, b);
      for (Arrow d : c.target_fiber(c.source(b))) {
        auto bd = c.try_compose(b, d);
        if (!ab || !bd) continue;
        ++assoc.cases;
        auto l = c.try_compose(*ab, d);
        auto r = c.try_compose(a, *bd);
        if (!l || !r || *l != *r)
          assoc.fail({{c.name(a), c.name(b), c.name(d)},
                      "(ab)c=" + (l ? c.name(*l) : std::string("undefined")) +
                          " but a(bc)=" + (r ? c.name(*r) : std::string("undefined"))});
      }
    }
  }

  auto& unit_st = rep.add_axiom("unit-source-target");
  for (std::uint32_t x = 0; x < c.object_count(); ++x) {
    ++unit_st.cases;
    Arrow u = c.unit(Obj{x});
    if (c.source(u) != Obj{x} || c.target(u) != Obj{x})
      unit_st.fail({{c.name(Obj{x}), c.name(u)}, "unit does not start and end at its object"});
  }

  auto& unit_law = rep.add_axiom("unit-laws");
  for (std::uint32_t i = 0; i < n; ++i) {
    Arrow a{i};
    ++unit_law.cases;
    auto l = c.try_compose(c.unit(c.target(a)), a);
    auto r = c.try_compose(a, c.unit(c.source(a)));
    if (!l || *l != a || !r || *r != a) unit_law.fail({{c.name(a)}, "unit law fails"});
  }
}

void scan_groupoid_axioms(const Groupoid& g, ValidationReport& rep) {
  auto& st = rep.add_axiom("inverse-source-target");
  auto& law = rep.add_axiom("inverse-law");
  for (std::uint32_t i = 0; i < g.arrow_count(); ++i) {
    Arrow a{i};
    Arrow inv = g.inverse(a);
    ++st.cases;
    if (g.source(inv) != g.target(a) || g.target(inv) != g.source(a)) {
      st.fail({{g.name(a), g.name(inv)}, "inverse has wrong source or target"});
      continue;
    }
    ++law.cases;
    auto l = g.try_compose(inv, a);
    auto r = g.try_compose(a, inv);
    if (!l || *l != g.unit(g.source(a)) || !r || *r != g.unit(g.target(a)))
      law.fail({{g.name(a), g.name(inv)}, "a⁻¹∘a or a∘a⁻¹ is not a unit"});
  }
}

}  // namespace

ValidationReport validate_structure(const Category& cat) {
  ValidationReport rep;
  rep.subject = "category";
  scan_category_axioms(cat, rep);
  return rep;
}

ValidationReport validate_structure(const Groupoid& gpd) {
  ValidationReport rep;
  rep.subject = "groupoid";
  scan_category_axioms(gpd, rep);
  scan_groupoid_axioms(gpd, rep);
  return rep;
}

ValidationReport validate_structure(const CategoryData& data) {
  ValidationReport rep;
  rep.subject = data.inverse ? "groupoid" : "category";
  rep.structural_errors = Category::structure_errors(data);
  if (data.inverse) {
    auto inv = inverse_errors(data);
    rep.structural_errors.insert(rep.structural_errors.end(), inv.begin(), inv.end());
  }
  if (!rep.structural_errors.empty()) return rep;
  if (data.inverse) {
    auto r = validate_structure(Groupoid::from_data(data));
    r.subject = rep.subject;
    return r;
  }
  auto r = validate_structure(Category::from_data(data));
  r.subject = rep.subject;
  return r;
}

std::vector<Arrow> left_translate(const Groupoid& gpd, Arrow g) {
  std::vector<Arrow> out;
  for (Arrow h : gpd.target_fiber(gpd.source(g))) out.push_back(gpd.compose(g, h));
  return out;
}

// --- constructions -----------------------------------------------------------

Groupoid make_group(const std::vector<std::string>& elements,
                    const std::function<std::size_t(std::size_t, std::size_t)>& mul,
                    const std::string& object) {
  const auto n = elements.size();
  if (n == 0) throw PreconditionError("a group needs at least one element");
  std::optional<std::size_t> e;
  for (std::size_t i = 0; i < n && !e; ++i) {
    bool is_id = true;
    for (std::size_t j = 0; j < n && is_id; ++j) is_id = mul(i, j) == j && mul(j, i) == j;
    if (is_id) e = i;
  }
  if (!e) throw PreconditionError("multiplication rule has no identity");

  CategoryData d;
  d.objects = {object};
  d.units[object] = elements[*e];
  d.inverse.emplace();
  for (std::size_t i = 0; i < n; ++i) {
    d.arrows.push_back({elements[i], object, object});
    std::optional<std::size_t> inv;
    for (std::size_t j = 0; j < n && !inv; ++j)
      if (mul(i, j) == *e && mul(j, i) == *e) inv = j;
    if (!inv) throw PreconditionError("element " + elements[i] + " has no inverse");
    (*d.inverse)[elements[i]] = elements[*inv];
    for (std::size_t j = 0; j < n; ++j) d.compose.push_back({elements[i], elements[j], elements[mul(i, j)]});
  }
  return Groupoid::from_data(d);
}

Groupoid cyclic_group(std::size_t n) {
  std::vector<std::string> names;
  for (std::size_t i = 0; i < n; ++i) names.push_back(std::to_string(i));
  return make_group(names, [n](std::size_t a, std::size_t b) { return (a + b) % n; });
}

Groupoid pair_groupoid(const std::vector<std::string>& points) {
  CategoryData d;
  d.objects = points;
  d.inverse.emplace();
  for (const auto& x : points) {
    d.units[x] = pair_label(x, x);
    for (const auto& y : points) {
      d.arrows.push_back({pair_label(x, y), y, x});
      (*d.inverse)[pair_label(x, y)] = pair_label(y, x);
      for (const auto& z : points) d.compose.push_back({pair_label(x, y), pair_label(y, z), pair_label(x, z)});
    }
  }
  return Groupoid::from_data(d);
}

Groupoid unit_groupoid(const std::vector<std::string>& objects) {
  CategoryData d;
  d.objects = objects;
  d.inverse.emplace();
  for (const auto& x : objects) {
    d.arrows.push_back({x, x, x});
    d.units[x] = x;
    (*d.inverse)[x] = x;
    d.compose.push_back({x, x, x});
  }
  return Groupoid::from_data(d);
}

Groupoid action_groupoid(const Groupoid& group, const std::vector<std::string>& points,
                         const std::function<std::size_t(std::size_t, std::size_t)>& act) {
  if (group.object_count() != 1) throw PreconditionError("action_groupoid needs a one-object groupoid");
  const auto ng = group.arrow_count();
  const Arrow e = group.unit(Obj{0});
  CategoryData d;
  d.objects = points;
  d.inverse.emplace();
  for (std::size_t x = 0; x < points.size(); ++x) {
    d.units[points[x]] = pair_label(group.name(e), points[x]);
    for (std::uint32_t g = 0; g < ng; ++g) {
      const auto gx = act(g, x);
      const auto label = pair_label(group.name(Arrow{g}), points[x]);
      d.arrows.push_back({label, points[x], points[gx]});
      (*d.inverse)[label] = pair_label(group.name(group.inverse(Arrow{g})), points[gx]);
      // (h, g·x) ∘ (g, x) = (hg, x)
      for (std::uint32_t h = 0; h < ng; ++h)
        d.compose.push_back({pair_label(group.name(Arrow{h}), points[gx]), label,
                             pair_label(group.name(group.compose(Arrow{h}, Arrow{g})), points[x])});
    }
  }
  return Groupoid::from_data(d);
}

}  // namespace dgpd
