#include "dgpd/haar.hpp"

#include "dgpd/error.hpp"

namespace dgpd {

HaarSystem HaarSystem::from_map(const Category& cat, const std::map<std::string, Rational>& weights) {
  for (const auto& [id, w] : weights) cat.arrow(id);
  HaarSystem h;
  h.weights.resize(cat.arrow_count());
  for (std::uint32_t i = 0; i < cat.arrow_count(); ++i) {
    auto it = weights.find(cat.name(Arrow{i}));
    if (it == weights.end()) throw PreconditionError("missing Haar weight for arrow " + cat.name(Arrow{i}));
    h.weights[i] = it->second;
  }
  return h;
}

std::map<std::string, Rational> HaarSystem::to_map(const Category& cat) const {
  std::map<std::string, Rational> m;
  for (std::uint32_t i = 0; i < weights.size(); ++i) m[cat.name(Arrow{i})] = weights[i];
  return m;
}

HaarSystem counting_haar(const Category& cat) { return uniform_haar(cat, Rational(1)); }

HaarSystem uniform_haar(const Category& cat, const Rational& c) {
  return HaarSystem{std::vector<Rational>(cat.arrow_count(), c)};
}

bool is_counting(const HaarSystem& h) {
  for (const auto& w : h.weights)
    if (w != Rational(1)) return false;
  return true;
}

ValidationReport validate_haar(const Groupoid& gpd, const HaarSystem& h) {
  ValidationReport rep;
  rep.subject = "haar-system";
  if (h.weights.size() != gpd.arrow_count()) {
    rep.structural_errors.push_back("weight table has " + std::to_string(h.weights.size()) + " entries for " +
                                    std::to_string(gpd.arrow_count()) + " arrows");
    return rep;
  }
  auto& pos = rep.add_axiom("positive-weights");
  for (std::uint32_t i = 0; i < gpd.arrow_count(); ++i) {
    ++pos.cases;
    if (h.weights[i] <= 0) pos.fail({{gpd.name(Arrow{i})}, "weight " + format_rational(h.weights[i])});
  }
  auto& inv = rep.add_axiom("left-invariance");
  for (std::uint32_t i = 0; i < gpd.arrow_count(); ++i) {
    Arrow g{i};
    for (Arrow x : gpd.target_fiber(gpd.source(g))) {
      ++inv.cases;
      Arrow gx = gpd.compose(g, x);
      if (h.weight(gx) != h.weight(x))
        inv.fail({{gpd.name(g), gpd.name(x)}, "weight(g∘h)=" + format_rational(h.weight(gx)) +
                                                  " but weight(h)=" + format_rational(h.weight(x))});
    }
  }
  rep.notes.emplace_back("smoothness: automatically satisfied for finite tables");
  return rep;
}

DoubleHaarSystem DoubleHaarSystem::counting(const DoubleGroupoid& dg) {
  return {std::vector<Rational>(dg.square_count(), Rational(1)), counting_haar(dg.side_k()),
          counting_haar(dg.side_h())};
}

ValidationReport validate_double_haar(const DoubleGroupoid& dg, const DoubleHaarSystem& dh) {
  ValidationReport rep;
  rep.subject = "double-haar-system";
  auto rk = validate_haar(dg.side_k(), dh.mu_k);
  rk.subject = "mu-K";
  auto rh = validate_haar(dg.side_h(), dh.mu_h);
  rh.subject = "mu-H";
  rep.components = {std::move(rk), std::move(rh)};
  if (dh.mu_d.size() != dg.square_count()) {
    rep.structural_errors.push_back("mu-D has " + std::to_string(dh.mu_d.size()) + " weights for " +
                                    std::to_string(dg.square_count()) + " squares");
    return rep;
  }
  auto& pos = rep.add_axiom("positive-weights");
  for (std::uint32_t i = 0; i < dg.square_count(); ++i) {
    ++pos.cases;
    if (dh.mu_d[i] <= 0) pos.fail({{dg.name(Arrow{i})}, "weight " + format_rational(dh.mu_d[i])});
  }
  // L^V_a maps (t^D)⁻¹(k,h) onto (t^D)⁻¹(a∘(k,h)) for k = s^V(a): atoms b with
  // t^V(b) = s^V(a) must keep their weight.
  const auto& v = dg.vertical();
  const auto& h = dg.horizontal();
  auto& vert = rep.add_axiom("double-invariance-vertical");
  auto& horz = rep.add_axiom("double-invariance-horizontal");
  for (std::uint32_t i = 0; i < dg.square_count(); ++i) {
    Arrow a{i};
    for (Arrow b : v.target_fiber(v.source(a))) {
      ++vert.cases;
      Arrow ab = v.compose(a, b);
      if (dh.mu_d[ab.index] != dh.mu_d[b.index])
        vert.fail({{dg.name(a), dg.name(b)}, "muD(a∘b)=" + format_rational(dh.mu_d[ab.index]) +
                                                 " but muD(b)=" + format_rational(dh.mu_d[b.index])});
    }
    for (Arrow b : h.target_fiber(h.source(a))) {
      ++horz.cases;
      Arrow ab = h.compose(a, b);
      if (dh.mu_d[ab.index] != dh.mu_d[b.index])
        horz.fail({{dg.name(a), dg.name(b)}, "muD(a•b)=" + format_rational(dh.mu_d[ab.index]) +
                                                 " but muD(b)=" + format_rational(dh.mu_d[b.index])});
    }
  }
  rep.notes.emplace_back("smoothness: automatically satisfied for finite tables");
  return rep;
}

namespace fiber {

Function integrate(const Groupoid& gpd, const HaarSystem& h, const Function& u) {
  Function out(gpd.object_count(), Rational(0));
  for (std::uint32_t i = 0; i < gpd.arrow_count(); ++i)
    out[gpd.target(Arrow{i}).index] += u[i] * h.weights[i];
  return out;
}

Function integrate_double_target(const DoubleGroupoid& dg, const DoubleHaarSystem& dh, const Function& u) {
  Function out(dg.side_k().arrow_count() * dg.side_h().arrow_count(), Rational(0));
  for (std::uint32_t i = 0; i < dg.square_count(); ++i)
    out[corner_index(dg, dg.double_target(Arrow{i}))] += u[i] * dh.mu_d[i];
  return out;
}

Function integrate_bar_h(const DoubleGroupoid& dg, const DoubleHaarSystem& dh, const Function& u) {
  Function out(dg.side_k().arrow_count(), Rational(0));
  for (const auto& c : dg.corners()) out[c.k.index] += u[corner_index(dg, c)] * dh.mu_h.weight(c.h);
  return out;
}

Function integrate_bar_k(const DoubleGroupoid& dg, const DoubleHaarSystem& dh, const Function& u) {
  Function out(dg.side_h().arrow_count(), Rational(0));
  for (const auto& c : dg.corners()) out[c.h.index] += u[corner_index(dg, c)] * dh.mu_k.weight(c.k);
  return out;
}

}  // namespace fiber

InducedHaar induce_haar(const DoubleGroupoid& dg, const DoubleHaarSystem& dh) {
  auto check = validate_double_haar(dg, dh);
  if (!check.ok()) throw PreconditionError("input is not a double Haar system");

  InducedHaar out;
  const auto n = dg.square_count();
  out.circ.weights.resize(n);
  out.bullet.weights.resize(n);
  for (std::uint32_t i = 0; i < n; ++i) {
    Arrow b{i};
    out.circ.weights[i] = dh.mu_d[i] * dh.mu_h.weight(dg.h_target(b));
    out.bullet.weights[i] = dh.mu_d[i] * dh.mu_k.weight(dg.v_target(b));
  }
  out.circ_report = validate_haar(dg.vertical(), out.circ);
  out.circ_report.subject = "induced-circ";
  out.bullet_report = validate_haar(dg.horizontal(), out.bullet);
  out.bullet_report.subject = "induced-bullet";

  auto& rep = out.diagram;
  rep.subject = "integration-diagram";
  auto& tri_c = rep.add_axiom("circ-triangle");
  auto& tri_b = rep.add_axiom("bullet-triangle");
  auto& outer = rep.add_axiom("outer-square");
  for (std::uint32_t i = 0; i < n; ++i) {
    fiber::Function delta(n, Rational(0));
    delta[i] = 1;
    const auto on_corners = fiber::integrate_double_target(dg, dh, delta);
    const auto circ = fiber::integrate(dg.vertical(), out.circ, delta);
    const auto bullet = fiber::integrate(dg.horizontal(), out.bullet, delta);
    ++tri_c.cases;
    if (circ != fiber::integrate_bar_h(dg, dh, on_corners)) tri_c.fail({{dg.name(Arrow{i})}, "∫μ° != ∫μ̄^H∘∫μ^D"});
    ++tri_b.cases;
    if (bullet != fiber::integrate_bar_k(dg, dh, on_corners))
      tri_b.fail({{dg.name(Arrow{i})}, "∫μ• != ∫μ̄^K∘∫μ^D"});
    ++outer.cases;
    if (fiber::integrate(dg.side_k(), dh.mu_k, circ) != fiber::integrate(dg.side_h(), dh.mu_h, bullet))
      outer.fail({{dg.name(Arrow{i})}, "∫μ^K∘∫μ° != ∫μ^H∘∫μ•"});
  }
  auto& fubini = rep.add_axiom("fubini-square");
  for (const auto& c : dg.corners()) {
    fiber::Function delta(dg.side_k().arrow_count() * dg.side_h().arrow_count(), Rational(0));
    delta[fiber::corner_index(dg, c)] = 1;
    ++fubini.cases;
    if (fiber::integrate(dg.side_k(), dh.mu_k, fiber::integrate_bar_h(dg, dh, delta)) !=
        fiber::integrate(dg.side_h(), dh.mu_h, fiber::integrate_bar_k(dg, dh, delta)))
      fubini.fail({{dg.side_k().name(c.k), dg.side_h().name(c.h)}, "∫μ^K∘∫μ̄^H != ∫μ^H∘∫μ̄^K"});
  }
  return out;
}

}  // namespace dgpd
