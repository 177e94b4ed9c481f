#include "dgpd/singular.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>

#include "dgpd/convolution.hpp"
#include "dgpd/error.hpp"
#include "dgpd/nctorus.hpp"

namespace dgpd::sg {

// --- CentralEmbedding -------------------------------------------------------------

CentralEmbedding CentralEmbedding::subgroup(const cg::FiniteGroup& g, const std::vector<std::string>& elements) {
  std::vector<std::size_t> idx;
  for (const auto& e : elements) idx.push_back(g.index(e));
  std::sort(idx.begin(), idx.end());
  idx.erase(std::unique(idx.begin(), idx.end()), idx.end());
  if (idx.empty()) throw PreconditionError("a subgroup needs at least the identity");
  std::vector<std::string> names;
  for (auto x : idx) names.push_back(g.element_name(x));
  auto pos = [&](std::size_t x) -> std::size_t {
    auto it = std::lower_bound(idx.begin(), idx.end(), x);
    if (it == idx.end() || *it != x) throw PreconditionError("listed elements are not closed under the group law");
    return static_cast<std::size_t>(it - idx.begin());
  };
  auto table = make_group(names, [&](std::size_t a, std::size_t b) { return pos(g.mul(idx[a], idx[b])); });
  CentralEmbedding ce;
  ce.model_ = GroupModel::finite(g);
  ce.k_ = cg::FiniteGroup(table, "K");
  for (std::size_t a = 0; a < ce.k_.order(); ++a) ce.embed_.push_back(g.index(ce.k_.element_name(a)));
  return ce;
}

CentralEmbedding CentralEmbedding::center(const cg::FiniteGroup& g) {
  std::vector<std::string> z;
  for (auto x : g.center()) z.push_back(g.element_name(x));
  return subgroup(g, z);
}

CentralEmbedding CentralEmbedding::trivial(const cg::FiniteGroup& g) {
  return subgroup(g, {g.element_name(g.identity())});
}

CentralEmbedding CentralEmbedding::integers(double r, std::int64_t bound) {
  if (bound < 0) throw PreconditionError("truncation bound must be non-negative");
  CentralEmbedding ce;
  ce.integers_ = true;
  ce.model_ = GroupModel::circle();
  ce.r_ = r;
  ce.bound_ = bound;
  return ce;
}

const cg::FiniteGroup& CentralEmbedding::k_group() const {
  if (integers_) throw PreconditionError("K = ℤ has no finite table");
  return k_;
}

std::size_t CentralEmbedding::embed(KElement k) const {
  if (integers_ || !contains(k)) throw UnknownIdError("no finite image for K element " + std::to_string(k));
  return embed_[static_cast<std::size_t>(k)];
}

std::vector<KElement> CentralEmbedding::elements() const {
  std::vector<KElement> out;
  if (integers_)
    for (KElement n = -bound_; n <= bound_; ++n) out.push_back(n);
  else
    for (std::size_t a = 0; a < k_.order(); ++a) out.push_back(static_cast<KElement>(a));
  return out;
}

bool CentralEmbedding::contains(KElement k) const {
  return integers_ ? (k >= -bound_ && k <= bound_) : (k >= 0 && static_cast<std::size_t>(k) < k_.order());
}

KElement CentralEmbedding::compose(KElement k, KElement l) const {
  if (!contains(k) || !contains(l)) throw UnknownIdError("K has no element " + std::to_string(contains(k) ? l : k));
  if (!integers_) return static_cast<KElement>(k_.mul(static_cast<std::size_t>(k), static_cast<std::size_t>(l)));
  const KElement s = k + l;
  if (!contains(s))
    throw TruncationError("level " + std::to_string(k) + " + " + std::to_string(l) + " leaves the band [" +
                          std::to_string(-bound_) + ", " + std::to_string(bound_) + "]");
  return s;
}

std::string CentralEmbedding::element_name(KElement k) const {
  if (!contains(k)) throw UnknownIdError("K has no element " + std::to_string(k));
  return integers_ ? std::to_string(k) : k_.element_name(static_cast<std::size_t>(k));
}

KElement CentralEmbedding::element(std::string_view name) const {
  if (!integers_) return static_cast<KElement>(k_.index(name));
  long long v = 0;
  char tail = 0;
  if (std::sscanf(std::string(name).c_str(), "%lld%c", &v, &tail) != 1 || !contains(v))
    throw UnknownIdError("\"" + std::string(name) + "\" is not an integer in [" + std::to_string(-bound_) + ", " +
                         std::to_string(bound_) + "]");
  return v;
}

ValidationReport CentralEmbedding::validate() const {
  ValidationReport rep;
  rep.subject = "central-embedding";
  if (integers_) {
    rep.notes.emplace_back("ℤ → circle by n ↦ rn: a homomorphism into an abelian group");
    return rep;
  }
  const auto& g = model_.group();
  auto& hom = rep.add_axiom("homomorphism");
  for (std::size_t a = 0; a < k_.order(); ++a)
    for (std::size_t b = 0; b < k_.order(); ++b) {
      ++hom.cases;
      if (embed_[k_.mul(a, b)] != g.mul(embed_[a], embed_[b])) hom.fail({{k_.element_name(a), k_.element_name(b)}, "φ(κλ) ≠ φ(κ)φ(λ)"});
    }
  auto& cen = rep.add_axiom("central-image");
  for (std::size_t a = 0; a < k_.order(); ++a) {
    ++cen.cases;
    if (!g.is_central(embed_[a])) cen.fail({{k_.element_name(a)}, "image " + g.element_name(embed_[a]) + " is not central"});
  }
  return rep;
}

// --- LevelFunction ----------------------------------------------------------------

LevelFunction LevelFunction::level(KElement k, const GroupFunction& u) {
  LevelFunction x(u.model());
  x.add(k, u);
  return x;
}

bool LevelFunction::is_zero(double tol) const {
  return std::all_of(levels_.begin(), levels_.end(), [&](const auto& kv) { return kv.second.is_zero(tol); });
}

void LevelFunction::add(KElement k, const GroupFunction& u) {
  if (!model_.same(u.model()))
    throw ContextMismatchError("level function on " + model_.name() + " cannot take a function on " + u.model().name());
  auto it = levels_.find(k);
  if (it == levels_.end()) {
    if (!u.is_zero()) levels_.emplace(k, u);
    return;
  }
  it->second += u;
  if (it->second.is_zero()) levels_.erase(it);
}

LevelFunction& LevelFunction::operator+=(const LevelFunction& o) {
  for (const auto& [k, u] : o.levels_) add(k, u);
  return *this;
}

double sup_distance(const LevelFunction& a, const LevelFunction& b) {
  if (!a.model().same(b.model())) throw ContextMismatchError("level functions on different groups");
  const auto zero = GroupFunction::zero(a.model());
  double d = 0.0;
  for (const auto& [k, u] : a.levels()) {
    auto it = b.levels().find(k);
    d = std::max(d, cg::sup_distance(u, it == b.levels().end() ? zero : it->second));
  }
  for (const auto& [k, u] : b.levels())
    if (!a.levels().count(k)) d = std::max(d, cg::sup_distance(u, zero));
  return d;
}

// --- products ---------------------------------------------------------------------

namespace {

void require(const CentralEmbedding& ce, const LevelFunction& x) {
  if (!ce.model().same(x.model()))
    throw ContextMismatchError("level function on " + x.model().name() + " used with an embedding into " + ce.model().name());
}

}  // namespace

GroupFunction translate(const CentralEmbedding& ce, KElement k, const GroupFunction& u) {
  if (!ce.contains(k)) throw UnknownIdError("K has no element " + std::to_string(k));
  if (!ce.model().same(u.model())) throw ContextMismatchError("translate: function on " + u.model().name());
  if (ce.is_integers()) {
    std::map<std::int64_t, cd> c;
    for (const auto& [f, z] : u.coeffs()) c[f] = z * std::polar(1.0, static_cast<double>(f) * ce.r() * static_cast<double>(k));
    return GroupFunction::fourier(std::move(c));
  }
  const auto& g = ce.model().group();
  const auto e = ce.embed(k);
  std::vector<cd> vals(g.order());
  for (std::size_t x = 0; x < vals.size(); ++x) vals[x] = u.at(g.mul(e, x));
  return GroupFunction::table(g, std::move(vals));
}

LevelFunction conv_bullet(const CentralEmbedding& ce, const LevelFunction& x, const LevelFunction& y) {
  require(ce, x);
  require(ce, y);
  LevelFunction out(ce.model());
  for (const auto& [k, u] : x.levels())
    for (const auto& [l, v] : y.levels()) out.add(ce.compose(k, l), cg::convolve(u, v));
  return out;
}

LevelFunction conv_circ(const CentralEmbedding& ce, const LevelFunction& x, const LevelFunction& y) {
  require(ce, x);
  require(ce, y);
  LevelFunction out(ce.model());
  for (const auto& [k, u] : x.levels())
    for (const auto& [l, v] : y.levels()) out.add(ce.compose(k, l), cg::pointwise(translate(ce, l, u), v));
  return out;
}

namespace {

// K×G as a vertical action groupoid and a horizontal product group, with
// arrows labelled "(κ,g)".
struct FiniteModel {
  Groupoid vertical, horizontal;
  HaarSystem mu_v, mu_h;
};

FiniteModel build_finite_model(const CentralEmbedding& ce) {
  const auto& k = ce.k_group();
  const auto& g = ce.model().group();
  std::vector<std::string> points;
  for (std::size_t x = 0; x < g.order(); ++x) points.push_back(g.element_name(x));
  FiniteModel m;
  m.vertical = action_groupoid(k.table(), points, [&](std::size_t kappa, std::size_t x) {
    // action_groupoid passes arrow indices of K's table, which are the K indices
    return g.mul(ce.embed(static_cast<KElement>(kappa)), x);
  });
  std::vector<std::string> names;
  for (std::size_t a = 0; a < k.order(); ++a)
    for (std::size_t x = 0; x < g.order(); ++x) names.push_back(pair_label(k.element_name(a), g.element_name(x)));
  const std::size_t n = g.order();
  m.horizontal = make_group(names, [&](std::size_t p, std::size_t q) { return k.mul(p / n, q / n) * n + g.mul(p % n, q % n); });
  m.mu_v = counting_haar(m.vertical);
  m.mu_h = uniform_haar(m.horizontal, Rational(1, static_cast<std::int64_t>(n)));
  return m;
}

FloatElement to_element(const CentralEmbedding& ce, const Category& cat, const LevelFunction& x) {
  const auto& k = ce.k_group();
  const auto& g = ce.model().group();
  FloatElement e(cat.shared_arrow_names());
  for (const auto& [kappa, u] : x.levels())
    for (std::size_t p = 0; p < g.order(); ++p)
      e.add(cat.arrow(pair_label(k.element_name(static_cast<std::size_t>(kappa)), g.element_name(p))), u.at(p));
  e.prune();
  return e;
}

LevelFunction from_element(const CentralEmbedding& ce, const Category& cat, const FloatElement& e) {
  const auto& k = ce.k_group();
  const auto& g = ce.model().group();
  LevelFunction out(ce.model());
  for (std::size_t a = 0; a < k.order(); ++a) {
    std::vector<cd> vals(g.order());
    for (std::size_t p = 0; p < g.order(); ++p) vals[p] = e[cat.arrow(pair_label(k.element_name(a), g.element_name(p)))];
    out.add(static_cast<KElement>(a), GroupFunction::table(g, std::move(vals)));
  }
  return out;
}

std::vector<cd> dense(const GroupFunction& u, std::int64_t lo, std::int64_t hi) {
  std::vector<cd> out(static_cast<std::size_t>(hi - lo + 1));
  for (const auto& [f, c] : u.coeffs()) out[static_cast<std::size_t>(f - lo)] = c;
  return out;
}

LevelFunction generic_integers(const CentralEmbedding& ce, const LevelFunction& x, const LevelFunction& y, Mode mode) {
  for (const auto& [a, u] : x.levels())
    for (const auto& [b, v] : y.levels())
      if (!ce.contains(a + b))
        throw TruncationError("product level " + std::to_string(a + b) + " escapes the band [" + std::to_string(-ce.bound()) +
                              ", " + std::to_string(ce.bound()) + "]");
  LevelFunction out(ce.model());
  for (KElement n = -ce.bound(); n <= ce.bound(); ++n) {
    std::map<std::int64_t, cd> acc;
    for (const auto& [m, v] : y.levels()) {
      // the other factor sits at level n − m
      auto it = x.levels().find(n - m);
      if (it == x.levels().end()) continue;
      const auto& u = it->second;
      if (mode == Mode::circ) {
        // u(n−m, rm + θ) v(m, θ): shift u by the angle rm, then multiply in θ
        for (const auto& [k, c] : u.coeffs())
          for (const auto& [l, d] : v.coeffs())
            acc[k + l] += c * std::polar(1.0, static_cast<double>(k) * ce.r() * static_cast<double>(m)) * d;
      } else {
        // ∫ u(n−m, φ) v(m, θ−φ) dφ/2π over a common frequency window
        if (u.coeffs().empty() || v.coeffs().empty()) continue;
        const auto lo = std::min(u.coeffs().begin()->first, v.coeffs().begin()->first);
        const auto hi = std::max(u.coeffs().rbegin()->first, v.coeffs().rbegin()->first);
        const auto du = dense(u, lo, hi), dv = dense(v, lo, hi);
        for (std::size_t s = 0; s < du.size(); ++s) acc[lo + static_cast<std::int64_t>(s)] += du[s] * dv[s];
      }
    }
    out.add(n, GroupFunction::fourier(std::move(acc)));
  }
  return out;
}

}  // namespace

LevelFunction generic_conv(const CentralEmbedding& ce, const LevelFunction& x, const LevelFunction& y, Mode mode) {
  require(ce, x);
  require(ce, y);
  if (ce.is_integers()) return generic_integers(ce, x, y, mode);
  const auto m = build_finite_model(ce);
  const Category& cat = mode == Mode::circ ? static_cast<const Category&>(m.vertical) : m.horizontal;
  const HaarSystem& mu = mode == Mode::circ ? m.mu_v : m.mu_h;
  return from_element(ce, cat, convolve(cat, mu, to_element(ce, cat, x), to_element(ce, cat, y)));
}

// --- theorem ----------------------------------------------------------------------

MainTheoremResult main_theorem_check(const CentralEmbedding& ce, const cg::UnitaryRep& pi, const GroupFunction& u,
                                     const GroupFunction& v, KElement k1, KElement k2, KElement l1, KElement l2,
                                     std::size_t i, std::size_t k, double tol) {
  if (!ce.model().same(pi.model)) throw ContextMismatchError("representation " + pi.name + " is not on " + ce.model().name());
  if (i >= pi.dim || k >= pi.dim) throw PreconditionError("index out of range for " + pi.name);
  const auto L = [](KElement kappa, const GroupFunction& f) { return LevelFunction::level(kappa, f); };
  MainTheoremResult r;
  r.lhs = LevelFunction(ce.model());
  r.rhs = LevelFunction(ce.model());
  const auto uv = conv_bullet(ce, L(k1, u), L(k2, v));
  for (std::size_t j = 0; j < pi.dim; ++j) {
    const auto pij = pi.coefficient(i, j), pjk = pi.coefficient(j, k);
    r.lhs += conv_bullet(ce, conv_circ(ce, L(k1, u), L(l1, pij)), conv_circ(ce, L(k2, v), L(l2, pjk)));
    r.rhs += conv_circ(ce, uv, conv_bullet(ce, L(l1, pij), L(l2, pjk)));
  }
  const auto level = ce.compose(ce.compose(ce.compose(k1, l1), k2), l2);
  r.intermediate = L(level, cg::pointwise(cg::convolve(translate(ce, l1, u), translate(ce, l2, v)), pi.coefficient(i, k)));
  r.gap = sup_distance(r.lhs, r.rhs);
  r.equal = r.gap <= tol;
  return r;
}

ValidationReport main_theorem_sweep(const CentralEmbedding& ce, const TheoremSweep& sweep, double tol) {
  ValidationReport rep;
  rep.subject = "main-theorem";
  if (!ce.validate().ok()) rep.notes.emplace_back("K is not central in G");
  for (const auto* pi : sweep.reps)
    if (!cg::validate_rep(*pi).ok()) rep.structural_errors.push_back("representation " + pi->name + " is invalid");
  if (!rep.structural_errors.empty()) return rep;

  auto& ax = rep.add_axiom("main-theorem");
  char gap[32];
  for (const auto* pi : sweep.reps)
    for (std::size_t n = 0; n < sweep.inputs.size(); ++n)
      for (auto k1 : sweep.levels)
        for (auto k2 : sweep.levels)
          for (auto l1 : sweep.levels)
            for (auto l2 : sweep.levels)
              for (std::size_t i = 0; i < pi->dim; ++i)
                for (std::size_t k = 0; k < pi->dim; ++k) {
                  ++ax.cases;
                  const auto r = main_theorem_check(ce, *pi, sweep.inputs[n].first, sweep.inputs[n].second, k1, k2, l1, l2, i, k, tol);
                  if (!r.equal) {
                    std::snprintf(gap, sizeof gap, "%.3g", r.gap);
                    ax.fail({{pi->name, std::to_string(n), ce.element_name(k1), ce.element_name(k2), ce.element_name(l1),
                              ce.element_name(l2), std::to_string(i), std::to_string(k)},
                             std::string("sides differ by ") + gap});
                  }
                }
  return rep;
}

ValidationReport torus_bridge_check(double r, std::int64_t range, bool flip_sign, double tol) {
  if (range < 0) throw PreconditionError("range must be non-negative");
  const auto ce = CentralEmbedding::integers(flip_sign ? -r : r, 2 * range);
  auto to_level = [&](const nct::TorusFunction& t) {
    LevelFunction x(ce.model());
    for (const auto& [key, c] : t.coeffs()) x.add(key.first, GroupFunction::character(key.second, c));
    return x;
  };
  ValidationReport rep;
  rep.subject = "torus-bridge";
  auto& circ = rep.add_axiom("circ-intertwined");
  auto& bullet = rep.add_axiom("bullet-intertwined");
  bool unit_phases = true;
  for (std::int64_t a = -range; a <= range; ++a)
    for (std::int64_t b = -range; b <= range; ++b)
      for (std::int64_t c = -range; c <= range; ++c)
        for (std::int64_t d = -range; d <= range; ++d) {
          const auto uab = nct::TorusFunction::basis(a, b), ucd = nct::TorusFunction::basis(c, d);
          const auto x = LevelFunction::level(a, GroupFunction::character(b));
          const auto y = LevelFunction::level(c, GroupFunction::character(d));
          const auto nc = nct::conv_circ(uab, ucd, r);
          for (const auto& [key, z] : nc.coeffs()) unit_phases = unit_phases && std::abs(z - 1.0) <= tol;
          const std::vector<std::string> ids{std::to_string(a), std::to_string(b), std::to_string(c), std::to_string(d)};
          ++circ.cases;
          if (sup_distance(to_level(nc), conv_circ(ce, x, y)) > tol) circ.fail({ids, "u_ab*∘u_cd differs under the bridge"});
          ++bullet.cases;
          if (sup_distance(to_level(nct::conv_bullet(uab, ucd)), conv_bullet(ce, x, y)) > tol)
            bullet.fail({ids, "u_ab*•u_cd differs under the bridge"});
        }
  if (unit_phases) rep.notes.emplace_back("every *∘ phase is 1");
  if (flip_sign) rep.notes.emplace_back("negative control: singular side rotates by −r");
  return rep;
}

nlohmann::json to_json(const CentralEmbedding& ce, const LevelFunction& x) {
  nlohmann::json j = nlohmann::json::object();
  for (const auto& [k, u] : x.levels()) j[ce.element_name(k)] = cg::to_json(u);
  return j;
}

}  // namespace dgpd::sg
