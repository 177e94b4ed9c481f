#include <cmath>
#include <numbers>
#include <random>

#include "doctest.h"
#include "dgpd/error.hpp"
#include "dgpd/nctorus.hpp"
#include "dgpd/singular.hpp"

using namespace dgpd;
using namespace dgpd::sg;

namespace {

LevelFunction random_levels(const CentralEmbedding& ce, std::mt19937_64& rng, std::int64_t max_level = 2) {
  LevelFunction x(ce.model());
  auto ks = ce.elements();
  if (ce.is_integers()) ks.erase(std::remove_if(ks.begin(), ks.end(), [&](auto k) { return std::abs(k) > max_level; }), ks.end());
  for (auto k : ks)
    if (rng() % 3) x.add(k, cg::random_function(ce.model(), rng));
  return x;
}

// (x*∘y)(κ,g) = Σ_β x(κβ⁻¹, βg) y(β, g), written out on the K×G table.
LevelFunction circ_by_table(const CentralEmbedding& ce, const LevelFunction& x, const LevelFunction& y) {
  const auto& g = ce.model().group();
  const auto& k = ce.k_group();
  auto val = [&](const LevelFunction& f, std::size_t kappa, std::size_t p) {
    auto it = f.levels().find(static_cast<KElement>(kappa));
    return it == f.levels().end() ? cg::cd{} : it->second.at(p);
  };
  LevelFunction out(ce.model());
  for (std::size_t kappa = 0; kappa < k.order(); ++kappa) {
    std::vector<cg::cd> vals(g.order());
    for (std::size_t p = 0; p < g.order(); ++p)
      for (std::size_t beta = 0; beta < k.order(); ++beta)
        vals[p] += val(x, k.mul(kappa, k.inv(beta)), g.mul(ce.embed(static_cast<KElement>(beta)), p)) * val(y, beta, p);
    out.add(static_cast<KElement>(kappa), GroupFunction::table(g, vals));
  }
  return out;
}

}  // namespace

TEST_CASE("central embeddings") {
  auto q8 = cg::q8_fixture();
  auto z = CentralEmbedding::center(q8.group);
  CHECK(z.elements().size() == 2);
  CHECK(z.validate().ok());
  CHECK(z.element_name(z.compose(z.element("-1"), z.element("-1"))) == "1");

  auto s3 = cg::s3_fixture();
  auto a3 = CentralEmbedding::subgroup(s3.group, {"p012", "p120", "p201"});
  auto rep = a3.validate();
  CHECK(rep.axiom("homomorphism")->passed());
  CHECK(rep.axiom("central-image")->failures == 2);
  CHECK_THROWS_AS(CentralEmbedding::subgroup(s3.group, {"p012", "p120"}), PreconditionError);
  CHECK_THROWS_AS(CentralEmbedding::subgroup(s3.group, {"p999"}), UnknownIdError);

  auto zz = CentralEmbedding::integers(1.0, 3);
  CHECK(zz.compose(2, -3) == -1);
  CHECK_THROWS_AS(zz.compose(2, 2), TruncationError);
  CHECK_THROWS_AS(zz.element("4"), UnknownIdError);
  CHECK(zz.element("-3") == -3);
  CHECK(zz.validate().ok());
}

TEST_CASE("translation") {
  auto q8 = cg::q8_fixture();
  auto ce = CentralEmbedding::center(q8.group);
  const auto r11 = q8.rep("rho2").coefficient(0, 0);
  CHECK(cg::sup_distance(translate(ce, ce.element("-1"), r11), cg::cd(-1) * r11) < 1e-15);
  CHECK(cg::sup_distance(translate(ce, ce.identity(), r11), r11) == 0);

  const double r = std::sqrt(2.0);
  auto zz = CentralEmbedding::integers(r, 5);
  for (std::int64_t n = -5; n <= 5; ++n)
    for (std::int64_t k = -3; k <= 3; ++k)
      CHECK(cg::sup_distance(translate(zz, n, GroupFunction::character(k)),
                             GroupFunction::character(k, std::polar(1.0, static_cast<double>(k * n) * r))) < 1e-14);
  CHECK_THROWS_AS(translate(zz, 6, GroupFunction::character(1)), UnknownIdError);

  // L_κ(u*v) = (L_κ u)*v = u*(L_κ v)
  std::mt19937_64 rng(5);
  for (const auto& [ce2, name] : {std::pair{CentralEmbedding::center(q8.group), "q8"},
                                   std::pair{CentralEmbedding::center(cg::cyclic_fixture(6).group), "z6"},
                                   std::pair{CentralEmbedding::integers(r, 4), "circle"}}) {
    CAPTURE(name);
    for (auto kappa : ce2.elements()) {
      auto u = cg::random_function(ce2.model(), rng), v = cg::random_function(ce2.model(), rng);
      auto a = translate(ce2, kappa, cg::convolve(u, v));
      CHECK(cg::sup_distance(a, cg::convolve(translate(ce2, kappa, u), v)) < 1e-12);
      CHECK(cg::sup_distance(a, cg::convolve(u, translate(ce2, kappa, v))) < 1e-12);
    }
  }
}

TEST_CASE("closed forms on level functions") {
  auto q8 = cg::q8_fixture();
  auto ce = CentralEmbedding::center(q8.group);
  const auto m = ce.model();
  const auto one = GroupFunction::constant(m, 1.0);
  const auto e = ce.identity(), minus = ce.element("-1");

  auto w = conv_bullet(ce, LevelFunction::level(e, one), LevelFunction::level(e, one));
  CHECK(sup_distance(w, LevelFunction::level(e, one)) < 1e-15);

  const auto r11 = q8.rep("rho2").coefficient(0, 0);
  auto c = conv_circ(ce, LevelFunction::level(minus, r11), LevelFunction::level(minus, r11));
  CHECK(sup_distance(c, LevelFunction::level(e, cg::cd(-1) * cg::pointwise(r11, r11))) < 1e-15);

  // λ = e: u^κ *∘ v^e = (u·v)^κ
  std::mt19937_64 rng(9);
  auto u = cg::random_function(m, rng), v = cg::random_function(m, rng);
  CHECK(sup_distance(conv_circ(ce, LevelFunction::level(minus, u), LevelFunction::level(e, v)),
                     LevelFunction::level(minus, cg::pointwise(u, v))) < 1e-15);

  // circle
  const double r = std::sqrt(2.0);
  auto zz = CentralEmbedding::integers(r, 8);
  auto b = conv_bullet(zz, LevelFunction::level(1, GroupFunction::character(2)), LevelFunction::level(3, GroupFunction::character(2)));
  CHECK(sup_distance(b, LevelFunction::level(4, GroupFunction::character(2))) == 0);
  CHECK(conv_bullet(zz, LevelFunction::level(1, GroupFunction::character(2)), LevelFunction::level(3, GroupFunction::character(3))).is_zero());
  for (std::int64_t a = -2; a <= 2; ++a)
    for (std::int64_t bb = -2; bb <= 2; ++bb)
      for (std::int64_t cc = -2; cc <= 2; ++cc)
        for (std::int64_t d = -2; d <= 2; ++d) {
          auto got = conv_circ(zz, LevelFunction::level(a, GroupFunction::character(bb)), LevelFunction::level(cc, GroupFunction::character(d)));
          auto want = LevelFunction::level(a + cc, GroupFunction::character(bb + d, std::polar(1.0, r * static_cast<double>(bb * cc))));
          CHECK(sup_distance(got, want) < 1e-14);
        }
  CHECK_THROWS_AS(conv_circ(zz, LevelFunction::level(5, one.model().is_circle() ? one : GroupFunction::character(0)),
                            LevelFunction::level(5, GroupFunction::character(0))),
                  TruncationError);
  CHECK_THROWS_AS(conv_circ(ce, LevelFunction::level(5, GroupFunction::character(0)), LevelFunction::level(0, GroupFunction::character(0))),
                  ContextMismatchError);
}

TEST_CASE("closed forms agree with the generic convolution") {
  std::mt19937_64 rng(20240611);
  auto q8 = cg::q8_fixture();
  auto s3 = cg::s3_fixture();
  for (const auto& ce : {CentralEmbedding::center(q8.group), CentralEmbedding::subgroup(s3.group, {"p012", "p120", "p201"})}) {
    double worst_c = 0, worst_b = 0;
    for (int t = 0; t < 100; ++t) {
      auto x = random_levels(ce, rng), y = random_levels(ce, rng);
      worst_c = std::max(worst_c, sup_distance(conv_circ(ce, x, y), generic_conv(ce, x, y, Mode::circ)));
      worst_b = std::max(worst_b, sup_distance(conv_bullet(ce, x, y), generic_conv(ce, x, y, Mode::bullet)));
      if (t < 5) CHECK(sup_distance(circ_by_table(ce, x, y), generic_conv(ce, x, y, Mode::circ)) < 1e-12);
    }
    CHECK(worst_c < 1e-12);
    CHECK(worst_b < 1e-12);
  }

  // circle/ℤ: generic sums reproduce the torus formulas
  for (double r : {0.0, std::sqrt(2.0), std::numbers::pi / 3}) {
    auto zz = CentralEmbedding::integers(r, 6);
    for (int t = 0; t < 30; ++t) {
      auto x = random_levels(zz, rng, 3), y = random_levels(zz, rng, 3);
      CHECK(sup_distance(conv_circ(zz, x, y), generic_conv(zz, x, y, Mode::circ)) < 1e-12);
      CHECK(sup_distance(conv_bullet(zz, x, y), generic_conv(zz, x, y, Mode::bullet)) < 1e-12);
    }
    for (std::int64_t a = -3; a <= 3; ++a)
      for (std::int64_t b = -3; b <= 3; ++b)
        for (std::int64_t c = -3; c <= 3; ++c)
          for (std::int64_t d = -3; d <= 3; ++d) {
            auto x = LevelFunction::level(a, GroupFunction::character(b));
            auto y = LevelFunction::level(c, GroupFunction::character(d));
            auto g = generic_conv(zz, x, y, Mode::circ);
            auto t = nct::generic_conv(nct::TorusFunction::basis(a, b), nct::TorusFunction::basis(c, d), r, nct::Mode::circ);
            REQUIRE(t.coeffs().size() == 1);
            const auto [key, z] = *t.coeffs().begin();
            CHECK(sup_distance(g, LevelFunction::level(key.first, GroupFunction::character(key.second, z))) < 1e-12);
          }
  }
  auto small = CentralEmbedding::integers(1.0, 2);
  CHECK_THROWS_AS(generic_conv(small, LevelFunction::level(2, GroupFunction::character(0)), LevelFunction::level(1, GroupFunction::character(0)), Mode::bullet),
                  TruncationError);
}

TEST_CASE("level grading") {
  std::mt19937_64 rng(17);
  auto zz = CentralEmbedding::integers(0.7, 8);
  for (int t = 0; t < 20; ++t) {
    auto x = random_levels(zz, rng, 3), y = random_levels(zz, rng, 3);
    for (auto* f : {+[](const CentralEmbedding& c, const LevelFunction& a, const LevelFunction& b) { return conv_circ(c, a, b); },
                    +[](const CentralEmbedding& c, const LevelFunction& a, const LevelFunction& b) { return conv_bullet(c, a, b); }}) {
      const auto w = f(zz, x, y);
      for (const auto& [n, u] : w.levels()) {
        bool found = false;
        for (const auto& [a, ua] : x.levels())
          for (const auto& [b, ub] : y.levels()) found = found || a + b == n;
        CHECK(found);
      }
    }
  }
}

TEST_CASE("main theorem on Q8 with K = centre") {
  auto q8 = cg::q8_fixture();
  auto ce = CentralEmbedding::center(q8.group);
  std::mt19937_64 rng(42);
  TheoremSweep sw;
  for (const auto& r : q8.irreps) sw.reps.push_back(&r);
  const auto one = GroupFunction::constant(ce.model(), 1.0);
  sw.inputs.push_back({one, one});
  for (int t = 0; t < 20; ++t) sw.inputs.push_back({cg::random_function(ce.model(), rng), cg::random_function(ce.model(), rng)});
  sw.levels = ce.elements();
  auto rep = main_theorem_sweep(ce, sw);
  CHECK(rep.ok());
  CHECK(rep.axiom("main-theorem")->cases == 8u * 21 * 16);

  // the intermediate value agrees on a central embedding
  const auto& rho = q8.rep("rho2");
  const auto m1 = ce.element("-1");
  for (std::size_t i = 0; i < 2; ++i)
    for (std::size_t k = 0; k < 2; ++k) {
      auto r = main_theorem_check(ce, rho, sw.inputs[3].first, sw.inputs[3].second, m1, ce.identity(), m1, m1, i, k);
      CHECK(r.equal);
      CHECK(sup_distance(r.lhs, r.intermediate) < 1e-12);
    }
  CHECK_THROWS_AS(main_theorem_check(ce, rho, one, one, 0, 0, 0, 0, 2, 0), PreconditionError);
}

TEST_CASE("main theorem with trivial K is weak compatibility") {
  auto s3 = cg::s3_fixture();
  auto ce = CentralEmbedding::trivial(s3.group);
  std::mt19937_64 rng(4);
  const auto& rho = s3.rep("rho2");
  auto u = cg::random_function(ce.model(), rng), v = cg::random_function(ce.model(), rng);
  for (std::size_t i = 0; i < 2; ++i)
    for (std::size_t k = 0; k < 2; ++k) {
      auto r = main_theorem_check(ce, rho, u, v, 0, 0, 0, 0, i, k);
      auto w = cg::weak_compat_check(rho, u, v, i, k);
      REQUIRE(r.lhs.levels().size() == 1);
      CHECK(cg::sup_distance(r.lhs.levels().at(0), w.lhs) < 1e-15);
      CHECK(cg::sup_distance(r.rhs.levels().at(0), w.rhs) < 1e-15);
      CHECK(r.equal == w.equal);
    }
}

TEST_CASE("main theorem on the truncated circle") {
  const double r = std::sqrt(2.0);
  auto ce = CentralEmbedding::integers(r, 16);
  std::vector<cg::UnitaryRep> chars;
  for (std::int64_t m = -4; m <= 4; ++m) chars.push_back(cg::UnitaryRep::circle_characters("e" + std::to_string(m), {m}));
  chars.push_back(cg::UnitaryRep::circle_characters("e(1,-2)", {1, -2}));
  TheoremSweep sw;
  for (const auto& c : chars) sw.reps.push_back(&c);
  std::mt19937_64 rng(8);
  sw.inputs.push_back({GroupFunction::character(2), GroupFunction::character(2)});
  sw.inputs.push_back({GroupFunction::character(1), GroupFunction::character(-3)});
  sw.inputs.push_back({cg::random_function(ce.model(), rng, 4), cg::random_function(ce.model(), rng, 4)});
  sw.levels = {-4, -1, 0, 3};
  CHECK(main_theorem_sweep(ce, sw).ok());

  auto narrow = CentralEmbedding::integers(r, 8);
  CHECK_THROWS_AS(main_theorem_check(narrow, chars[0], GroupFunction::character(1), GroupFunction::character(1), 4, 4, 4, 4, 0, 0),
                  TruncationError);
}

TEST_CASE("main theorem fails for a non-central K") {
  auto s3 = cg::s3_fixture();
  auto ce = CentralEmbedding::subgroup(s3.group, {"p012", "p120", "p201"});
  std::mt19937_64 rng(42);
  TheoremSweep sw;
  for (const auto& r : s3.irreps) sw.reps.push_back(&r);
  const auto one = GroupFunction::constant(ce.model(), 1.0);
  sw.inputs.push_back({one, one});
  for (int t = 0; t < 3; ++t) sw.inputs.push_back({cg::random_function(ce.model(), rng), cg::random_function(ce.model(), rng)});
  sw.levels = ce.elements();
  auto rep = main_theorem_sweep(ce, sw);
  const auto* ax = rep.axiom("main-theorem");
  REQUIRE(ax);
  CHECK(ax->failures >= 1);
  CHECK(ax->failures < ax->cases);
  CHECK(ax->witnesses[0].ids.size() == 8);
}

TEST_CASE("torus bridge") {
  for (double r : {0.0, std::sqrt(2.0), std::numbers::pi / 5}) {
    auto rep = torus_bridge_check(r, 3);
    CHECK(rep.ok());
    CHECK(rep.axiom("circ-intertwined")->cases == 7u * 7 * 7 * 7);
    const bool unit = std::find(rep.notes.begin(), rep.notes.end(), "every *∘ phase is 1") != rep.notes.end();
    CHECK(unit == (r == 0.0));
  }
  auto neg = torus_bridge_check(std::numbers::pi / 5, 2, true);
  CHECK_FALSE(neg.ok());
  CHECK(neg.axiom("circ-intertwined")->failures > 0);
  CHECK(neg.axiom("bullet-intertwined")->passed());
}
