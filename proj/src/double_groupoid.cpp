#include "dgpd/double_groupoid.hpp"

#include <algorithm>
#include <set>

#include "dgpd/error.hpp"

namespace dgpd {

DoubleGroupoid DoubleGroupoid::make(Groupoid vertical, Groupoid horizontal, Groupoid side_k, Groupoid side_h) {
  std::vector<std::string> errs;
  if (vertical.arrow_names() != horizontal.arrow_names())
    errs.emplace_back("vertical and horizontal structures have different square ids");
  if (vertical.object_names() != side_k.arrow_names())
    errs.emplace_back("vertical objects differ from the arrows of the K-side groupoid");
  if (horizontal.object_names() != side_h.arrow_names())
    errs.emplace_back("horizontal objects differ from the arrows of the H-side groupoid");
  if (side_k.object_names() != side_h.object_names())
    errs.emplace_back("K-side and H-side groupoids have different objects");
  if (!errs.empty()) {
    std::string msg;
    for (const auto& e : errs) msg += (msg.empty() ? "" : "; ") + e;
    throw StructureError(msg);
  }
  DoubleGroupoid dg;
  horizontal.share_arrow_names(vertical.shared_arrow_names());
  dg.vertical_ = std::move(vertical);
  dg.horizontal_ = std::move(horizontal);
  dg.side_k_ = std::move(side_k);
  dg.side_h_ = std::move(side_h);
  return dg;
}

std::vector<Corner> DoubleGroupoid::corners() const {
  std::vector<Corner> out;
  for (std::uint32_t k = 0; k < side_k_.arrow_count(); ++k)
    for (std::uint32_t h = 0; h < side_h_.arrow_count(); ++h)
      if (is_corner({Arrow{k}, Arrow{h}})) out.push_back({Arrow{k}, Arrow{h}});
  return out;
}

Corner DoubleGroupoid::act_vertical(Arrow a, Corner c) const {
  if (v_source(a) != c.k)
    throw CompositionError("square " + name(a) + " does not act vertically on corner " + corner_name(c));
  return {v_target(a), side_h_.compose(h_target(a), c.h)};
}

Corner DoubleGroupoid::act_horizontal(Arrow a, Corner c) const {
  if (h_source(a) != c.h)
    throw CompositionError("square " + name(a) + " does not act horizontally on corner " + corner_name(c));
  return {side_k_.compose(v_target(a), c.k), h_target(a)};
}

std::vector<ComposableSquare> composable_squares(const DoubleGroupoid& dg, bool audit) {
  const auto& v = dg.vertical();
  const auto& h = dg.horizontal();
  const auto n = static_cast<std::uint32_t>(dg.square_count());
  std::vector<ComposableSquare> out;
  if (audit) {
    for (std::uint32_t a = 0; a < n; ++a)
      for (std::uint32_t b = 0; b < n; ++b)
        for (std::uint32_t c = 0; c < n; ++c)
          for (std::uint32_t d = 0; d < n; ++d) {
            Arrow A{a}, B{b}, C{c}, D{d};
            if (v.composable(A, B) && v.composable(C, D) && h.composable(A, C) && h.composable(B, D))
              out.push_back({A, B, C, D});
          }
    return out;
  }
  for (std::uint32_t ai = 0; ai < n; ++ai) {
    Arrow a{ai};
    for (Arrow b : v.target_fiber(v.source(a))) {
      for (Arrow c : h.target_fiber(h.source(a))) {
        for (Arrow d : v.target_fiber(v.source(c))) {
          if (h.source(b) == h.target(d)) out.push_back({a, b, c, d});
        }
      }
    }
  }
  return out;
}

namespace {

// φ₁: squares → side arrows, φ₀: base arrows → M, as a functor from the
// `over` structure on squares to `side`, with `base` providing the objects of
// `over` (their source/target in M are read through φ₀).
void check_functor(const DoubleGroupoid& dg, const std::string& label, const Groupoid& over,
                   const Groupoid& side, const std::function<Arrow(Arrow)>& phi1,
                   const std::function<std::uint32_t(Arrow)>& phi0_of_over_source,
                   const std::function<std::uint32_t(Arrow)>& phi0_of_over_target, ValidationReport& rep) {
  auto& ax = rep.add_axiom(label);
  const auto n = static_cast<std::uint32_t>(dg.square_count());
  for (std::uint32_t i = 0; i < n; ++i) {
    Arrow a{i};
    ++ax.cases;
    Arrow img = phi1(a);
    if (side.source(img).index != phi0_of_over_source(a) || side.target(img).index != phi0_of_over_target(a))
      ax.fail({{dg.name(a)}, "image " + side.name(img) + " has the wrong source or target"});
  }
  for (std::uint32_t i = 0; i < n; ++i) {
    Arrow a{i};
    for (Arrow b : over.target_fiber(over.source(a))) {
      ++ax.cases;
      auto ab = over.try_compose(a, b);
      auto img = side.try_compose(phi1(a), phi1(b));
      if (!ab || !img || phi1(*ab) != *img)
        ax.fail({{dg.name(a), dg.name(b)}, "image of the composite is not the composite of the images"});
    }
  }
}

}  // namespace

ValidationReport validate_double(const DoubleGroupoid& dg, bool audit) {
  ValidationReport rep;
  rep.subject = "double-groupoid";
  const std::pair<const char*, const Groupoid*> parts[] = {
      {"vertical", &dg.vertical()},
      {"horizontal", &dg.horizontal()},
      {"side-K", &dg.side_k()},
      {"side-H", &dg.side_h()}};
  bool components_ok = true;
  for (const auto& [label, g] : parts) {
    auto r = validate_structure(*g);
    r.subject = label;
    components_ok = components_ok && r.ok();
    rep.components.push_back(std::move(r));
  }
  if (!components_ok) {
    rep.notes.emplace_back("component structure invalid; double-groupoid axioms not scanned");
    return rep;
  }

  const auto& K = dg.side_k();
  const auto& H = dg.side_h();
  // s^V, t^V : (squares ⇉ H, •) → (K ⇉ M, •) over s^V_0, t^V_0 : H → M.
  check_functor(
      dg, "vertical-source-functor", dg.horizontal(), K, [&](Arrow a) { return dg.v_source(a); },
      [&](Arrow a) { return H.source(dg.h_source(a)).index; },
      [&](Arrow a) { return H.source(dg.h_target(a)).index; }, rep);
  check_functor(
      dg, "vertical-target-functor", dg.horizontal(), K, [&](Arrow a) { return dg.v_target(a); },
      [&](Arrow a) { return H.target(dg.h_source(a)).index; },
      [&](Arrow a) { return H.target(dg.h_target(a)).index; }, rep);
  // s^H, t^H : (squares ⇉ K, ∘) → (H ⇉ M, ∘) over s^H_0, t^H_0 : K → M.
  check_functor(
      dg, "horizontal-source-functor", dg.vertical(), H, [&](Arrow a) { return dg.h_source(a); },
      [&](Arrow a) { return K.source(dg.v_source(a)).index; },
      [&](Arrow a) { return K.source(dg.v_target(a)).index; }, rep);
  check_functor(
      dg, "horizontal-target-functor", dg.vertical(), H, [&](Arrow a) { return dg.h_target(a); },
      [&](Arrow a) { return K.target(dg.v_source(a)).index; },
      [&](Arrow a) { return K.target(dg.v_target(a)).index; }, rep);

  auto& inter = rep.add_axiom("interchange");
  const auto& v = dg.vertical();
  const auto& h = dg.horizontal();
  for (const auto& [a, b, c, d] : composable_squares(dg, audit)) {
    ++inter.cases;
    auto lhs = h.try_compose(v.compose(a, b), v.compose(c, d));
    auto rhs = v.try_compose(h.compose(a, c), h.compose(b, d));
    if (!lhs || !rhs || *lhs != *rhs) {
      std::string detail = "(a∘b)•(c∘d)=" + (lhs ? dg.name(*lhs) : std::string("undefined")) +
                           ", (a•c)∘(b•d)=" + (rhs ? dg.name(*rhs) : std::string("undefined"));
      inter.fail({{dg.name(a), dg.name(b), dg.name(c), dg.name(d)}, detail});
    }
  }

  auto& surj = rep.add_axiom("double-target-surjective");
  std::set<Corner> hit;
  for (std::uint32_t i = 0; i < dg.square_count(); ++i) hit.insert(dg.double_target(Arrow{i}));
  for (const auto& c : dg.corners()) {
    ++surj.cases;
    if (!hit.count(c)) surj.fail({{K.name(c.k), H.name(c.h)}, "corner has no square above it"});
  }
  rep.notes.emplace_back("smooth structure and submersion conditions: not applicable to finite tables");
  return rep;
}

ValidationReport check_double_target_equivariance(const DoubleGroupoid& dg) {
  ValidationReport rep;
  rep.subject = "double-target-equivariance";
  const auto& v = dg.vertical();
  const auto& h = dg.horizontal();
  auto& vert = rep.add_axiom("vertical");
  auto& horz = rep.add_axiom("horizontal");
  for (std::uint32_t i = 0; i < dg.square_count(); ++i) {
    Arrow a{i};
    for (Arrow b : v.target_fiber(v.source(a))) {
      ++vert.cases;
      auto ab = v.try_compose(a, b);
      bool ok = false;
      try {
        ok = ab && dg.double_target(*ab) == dg.act_vertical(a, dg.double_target(b));
      } catch (const Error&) {
      }
      if (!ok) vert.fail({{dg.name(a), dg.name(b)}, "t^D(a∘b) != a∘t^D(b)"});
    }
    for (Arrow b : h.target_fiber(h.source(a))) {
      ++horz.cases;
      auto ab = h.try_compose(a, b);
      bool ok = false;
      try {
        ok = ab && dg.double_target(*ab) == dg.act_horizontal(a, dg.double_target(b));
      } catch (const Error&) {
      }
      if (!ok) horz.fail({{dg.name(a), dg.name(b)}, "t^D(a•b) != a•t^D(b)"});
    }
  }
  return rep;
}

// --- constructions -------------------------------------------------------------

Groupoid with_object_name(const Groupoid& group, const std::string& object) {
  if (group.object_count() != 1) throw PreconditionError("expected a one-object groupoid (a group)");
  auto d = group.to_data();
  const std::string old = d.objects.front();
  d.objects = {object};
  for (auto& a : d.arrows) a.source = a.target = object;
  d.units = {{object, d.units.at(old)}};
  d.inverse.emplace();
  for (std::uint32_t i = 0; i < group.arrow_count(); ++i)
    (*d.inverse)[group.name(Arrow{i})] = group.name(group.inverse(Arrow{i}));
  return Groupoid::from_data(d);
}

DoubleGroupoid from_group(const Groupoid& group) {
  if (group.object_count() != 1) throw PreconditionError("from_group needs a group (one object)");
  auto G = with_object_name(group, "*");
  auto vertical = unit_groupoid(G.arrow_names());
  auto horizontal = G;
  return DoubleGroupoid::make(std::move(vertical), std::move(horizontal), std::move(G), unit_groupoid({"*"}));
}

DoubleGroupoid action_double(const Groupoid& acting, const Groupoid& group, const std::vector<std::size_t>& phi) {
  if (acting.object_count() != 1 || group.object_count() != 1)
    throw PreconditionError("action_double needs two groups");
  if (phi.size() != acting.arrow_count()) throw PreconditionError("phi must be given on every element of K");
  const auto G = with_object_name(group, "*");
  const auto nk = acting.arrow_count();
  const auto ng = G.arrow_count();
  for (std::uint32_t x = 0; x < nk; ++x)
    for (std::uint32_t y = 0; y < nk; ++y)
      if (G.compose(Arrow{static_cast<std::uint32_t>(phi[x])}, Arrow{static_cast<std::uint32_t>(phi[y])}) !=
          Arrow{static_cast<std::uint32_t>(phi[acting.compose(Arrow{x}, Arrow{y}).index])})
        throw PreconditionError("phi is not a homomorphism");

  auto vertical = action_groupoid(acting, G.arrow_names(), [&](std::size_t k, std::size_t g) {
    return G.compose(Arrow{static_cast<std::uint32_t>(phi[k])}, Arrow{static_cast<std::uint32_t>(g)}).index;
  });

  std::vector<std::string> labels;
  for (std::uint32_t k = 0; k < nk; ++k)
    for (std::uint32_t g = 0; g < ng; ++g) labels.push_back(pair_label(acting.name(Arrow{k}), G.name(Arrow{g})));
  auto horizontal = make_group(
      labels,
      [&](std::size_t x, std::size_t y) {
        auto k = acting.compose(Arrow{static_cast<std::uint32_t>(x / ng)}, Arrow{static_cast<std::uint32_t>(y / ng)});
        auto g = G.compose(Arrow{static_cast<std::uint32_t>(x % ng)}, Arrow{static_cast<std::uint32_t>(y % ng)});
        return static_cast<std::size_t>(k.index) * ng + g.index;
      },
      "*");
  return DoubleGroupoid::make(std::move(vertical), std::move(horizontal), G, unit_groupoid({"*"}));
}

DoubleGroupoid central_action_double(const Groupoid& group, const std::vector<std::string>& subgroup) {
  if (group.object_count() != 1) throw PreconditionError("central_action_double needs a group");
  std::vector<std::string> names = subgroup;
  std::sort(names.begin(), names.end());
  names.erase(std::unique(names.begin(), names.end()), names.end());
  std::vector<Arrow> members;
  for (const auto& s : names) members.push_back(group.arrow(s));
  auto position = [&](Arrow x) -> std::size_t {
    auto it = std::find(members.begin(), members.end(), x);
    if (it == members.end())
      throw PreconditionError("subset is not closed under the group operation (" + group.name(x) + ")");
    return static_cast<std::size_t>(it - members.begin());
  };
  for (Arrow x : members)
    for (Arrow y : members) position(group.compose(x, y));
  auto K = make_group(names, [&](std::size_t x, std::size_t y) { return position(group.compose(members[x], members[y])); });
  std::vector<std::size_t> phi;
  for (Arrow x : members) phi.push_back(x.index);
  return action_double(K, group, phi);
}

DoubleGroupoid diagonal_double(const Groupoid& abelian_group) {
  auto G = with_object_name(abelian_group, "*");
  return DoubleGroupoid::make(G, G, unit_groupoid({"*"}), unit_groupoid({"*"}));
}

DoubleGroupoid empty_double() {
  return DoubleGroupoid::make(unit_groupoid({}), unit_groupoid({}), unit_groupoid({}), unit_groupoid({}));
}

}  // namespace dgpd

namespace dgpd {

DoubleGroupoid coarse_double(const std::vector<std::string>& points) {
  auto label = [](const std::string& p, const std::string& q, const std::string& r, const std::string& s) {
    return "[" + p + "," + q + ";" + r + "," + s + "]";
  };
  std::vector<std::string> edges;
  for (const auto& x : points)
    for (const auto& y : points) edges.push_back(pair_label(x, y));

  CategoryData v, h;
  v.objects = h.objects = edges;
  v.inverse.emplace();
  h.inverse.emplace();
  for (const auto& x : points)
    for (const auto& y : points) {
      v.units[pair_label(y, x)] = label(x, y, x, y);
      h.units[pair_label(y, x)] = label(x, x, y, y);
    }
  for (const auto& p : points)
    for (const auto& q : points)
      for (const auto& r : points)
        for (const auto& s : points) {
          const auto a = label(p, q, r, s);
          v.arrows.push_back({a, pair_label(q, p), pair_label(s, r)});
          h.arrows.push_back({a, pair_label(r, p), pair_label(s, q)});
          (*v.inverse)[a] = label(r, s, p, q);
          (*h.inverse)[a] = label(q, p, s, r);
          // b above a: bottom of b is the top of a
          for (const auto& p2 : points)
            for (const auto& q2 : points) v.compose.push_back({a, label(p2, q2, p, q), label(p2, q2, r, s)});
          // b left of a: right edge of b is the left edge of a
          for (const auto& p2 : points)
            for (const auto& r2 : points) h.compose.push_back({a, label(p2, p, r2, r), label(p2, q, r2, s)});
        }
  return DoubleGroupoid::make(Groupoid::from_data(v), Groupoid::from_data(h), pair_groupoid(points),
                              pair_groupoid(points));
}

}  // namespace dgpd
